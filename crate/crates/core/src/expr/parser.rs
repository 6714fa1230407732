//! Recursive-descent parser.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := NUM | 'pi' | IDENT | IDENT '(' sum (',' sum)* ')' | '(' sum ')'
//! ```
//!
//! `power` takes a `unary` on its right, which makes `^` right-associative and
//! lets `2^-3` parse, while `-2^2` still means `-(2^2)`.

use super::lexer::{Token, TokenKind};
use super::{BinOp, Expr, ExprError, Func};

pub fn parse(tokens: &[Token]) -> Result<Expr, ExprError> {
    let end = tokens.last().map_or(0, |t| t.offset + 1);
    let mut p = Parser {
        tokens,
        pos: 0,
        end,
    };
    let expr = p.sum()?;
    if let Some(tok) = p.peek() {
        return Err(match tok.kind {
            TokenKind::RParen => ExprError::parse(tok.offset, "unbalanced `)`"),
            _ => ExprError::parse(tok.offset, format!("unexpected {}", describe(&tok.kind))),
        });
    }
    Ok(expr)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn at(&self, kind: &TokenKind) -> bool {
        self.peek().is_some_and(|t| &t.kind == kind)
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Plus) => BinOp::Add,
                Some(TokenKind::Minus) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.product()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Star) => BinOp::Mul,
                Some(TokenKind::Slash) => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.at(&TokenKind::Minus) {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.primary()?;
        if self.at(&TokenKind::Caret) {
            self.pos += 1;
            let exponent = self.unary()?;
            return Ok(Expr::binary(BinOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let Some(tok) = self.bump() else {
            return Err(ExprError::parse(self.end, "unexpected end of input"));
        };
        match &tok.kind {
            TokenKind::Num(v) => Ok(Expr::Num(*v)),
            TokenKind::LParen => {
                let inner = self.sum()?;
                match self.bump() {
                    Some(t) if t.kind == TokenKind::RParen => Ok(inner),
                    Some(t) => Err(ExprError::parse(
                        t.offset,
                        format!("expected `)`, found {}", describe(&t.kind)),
                    )),
                    None => Err(ExprError::parse(tok.offset, "unbalanced `(`")),
                }
            }
            TokenKind::Ident(name) if self.at(&TokenKind::LParen) => self.call(name, tok.offset),
            TokenKind::Ident(name) if name == "pi" => Ok(Expr::Pi),
            TokenKind::Ident(name) => Ok(Expr::Var(name.clone())),
            other => Err(ExprError::parse(
                tok.offset,
                format!("unexpected {}", describe(other)),
            )),
        }
    }

    fn call(&mut self, name: &str, offset: usize) -> Result<Expr, ExprError> {
        let func = Func::from_name(name)
            .ok_or_else(|| ExprError::parse(offset, format!("unknown function `{name}`")))?;
        let open = self.bump().map_or(offset, |t| t.offset);
        let mut args = Vec::new();
        if !self.at(&TokenKind::RParen) {
            loop {
                args.push(self.sum()?);
                if self.at(&TokenKind::Comma) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        match self.bump() {
            Some(t) if t.kind == TokenKind::RParen => {}
            Some(t) => {
                return Err(ExprError::parse(
                    t.offset,
                    format!("expected `)` or `,`, found {}", describe(&t.kind)),
                ))
            }
            None => return Err(ExprError::parse(open, "unbalanced `(`")),
        }
        if args.len() != 1 {
            return Err(ExprError::parse(
                offset,
                format!("`{name}` takes 1 argument, got {}", args.len()),
            ));
        }
        let arg = args.pop().unwrap_or(Expr::Num(0.0));
        Ok(Expr::Call {
            func,
            arg: Box::new(arg),
        })
    }
}

fn describe(kind: &TokenKind) -> String {
    match kind {
        TokenKind::Num(v) => format!("number {v}"),
        TokenKind::Ident(s) => format!("identifier `{s}`"),
        TokenKind::Plus => "`+`".into(),
        TokenKind::Minus => "`-`".into(),
        TokenKind::Star => "`*`".into(),
        TokenKind::Slash => "`/`".into(),
        TokenKind::Caret => "`^`".into(),
        TokenKind::LParen => "`(`".into(),
        TokenKind::RParen => "`)`".into(),
        TokenKind::Comma => "`,`".into(),
    }
}
