//! Recursive-descent parser for session files. Errors carry the offending
//! span, what was found, and the expected-token set.

use crate::ast::{Expr, PolyExpr, Session, Span, Stmt};
use crate::lexer::{lex, LexError, Tok};

#[derive(Debug, Clone)]
pub struct ParseError {
    pub span: Span,
    pub found: String,
    pub expected: Vec<String>,
    pub message: Option<String>,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: ", self.span)?;
        if let Some(m) = &self.message {
            write!(f, "{m}")
        } else {
            write!(
                f,
                "found {}, expected {}",
                self.found,
                self.expected.join(" or ")
            )
        }
    }
}

impl From<LexError> for ParseError {
    fn from(e: LexError) -> Self {
        ParseError {
            span: e.span,
            found: String::new(),
            expected: Vec::new(),
            message: Some(e.message),
        }
    }
}

pub fn parse_session(src: &str) -> Result<Session, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    p.session()
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, expected: &[&str]) -> ParseError {
        ParseError {
            span: self.span(),
            found: self.peek().describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            message: None,
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == &tok {
            self.bump();
            Ok(())
        } else {
            Err(self.err(&[what]))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.err(&[what])),
        }
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.err(&["integer"])),
        }
    }

    fn signed_integer(&mut self) -> Result<i64, ParseError> {
        if self.peek() == &Tok::Minus {
            self.bump();
            Ok(-(self.integer()? as i64))
        } else {
            Ok(self.integer()? as i64)
        }
    }

    fn session(&mut self) -> Result<Session, ParseError> {
        let mut stmts = Vec::new();
        while self.peek() != &Tok::Eof {
            stmts.push(self.stmt()?);
        }
        Ok(Session { stmts })
    }

    fn stmt(&mut self) -> Result<Stmt, ParseError> {
        let span = self.span();
        let stmt = match self.peek() {
            Tok::Ident(kw) if kw == "ring" => self.ring_decl(span)?,
            Tok::Ident(kw) if kw == "ideal" => self.ideal_decl(span)?,
            Tok::Ident(kw) if kw == "module" => self.binding_decl(span, BindKind::Module)?,
            Tok::Ident(kw) if kw == "let" => self.binding_decl(span, BindKind::Let)?,
            Tok::Ident(_) | Tok::LParen => {
                let expr = self.expr()?;
                Stmt::Command { expr, span }
            }
            _ => {
                return Err(self.err(&[
                    "`ring`",
                    "`ideal`",
                    "`module`",
                    "`let`",
                    "command",
                ]))
            }
        };
        self.expect(Tok::Semi, "`;`")?;
        Ok(stmt)
    }

    fn ring_decl(&mut self, span: Span) -> Result<Stmt, ParseError> {
        self.bump(); // ring
        let name = self.ident("ring name")?;
        self.expect(Tok::Eq, "`=`")?;
        let gf = self.ident("`GF`")?;
        if gf != "GF" {
            return Err(ParseError {
                span,
                found: format!("identifier `{gf}`"),
                expected: vec!["`GF`".into()],
                message: None,
            });
        }
        self.expect(Tok::LParen, "`(`")?;
        let prime = self.integer()?;
        self.expect(Tok::RParen, "`)`")?;
        self.expect(Tok::LBracket, "`[`")?;
        let mut vars = vec![self.ident("variable name")?];
        while self.peek() == &Tok::Comma {
            self.bump();
            vars.push(self.ident("variable name")?);
        }
        self.expect(Tok::RBracket, "`]`")?;
        let mut relations = Vec::new();
        if self.peek() == &Tok::Slash {
            self.bump();
            self.expect(Tok::LParen, "`(`")?;
            relations.push(self.poly_expr()?);
            while self.peek() == &Tok::Comma {
                self.bump();
                relations.push(self.poly_expr()?);
            }
            self.expect(Tok::RParen, "`)`")?;
        }
        Ok(Stmt::Ring {
            name,
            prime,
            vars,
            relations,
            span,
        })
    }

    fn ideal_decl(&mut self, span: Span) -> Result<Stmt, ParseError> {
        self.bump(); // ideal
        let name = self.ident("ideal name")?;
        self.expect(Tok::Eq, "`=`")?;
        self.expect(Tok::LParen, "`(`")?;
        let mut gens = vec![self.poly_expr()?];
        while self.peek() == &Tok::Comma {
            self.bump();
            gens.push(self.poly_expr()?);
        }
        self.expect(Tok::RParen, "`)`")?;
        Ok(Stmt::Ideal { name, gens, span })
    }

    fn binding_decl(&mut self, span: Span, kind: BindKind) -> Result<Stmt, ParseError> {
        self.bump(); // module | let
        let name = self.ident("binding name")?;
        self.expect(Tok::Eq, "`=`")?;
        let expr = self.expr()?;
        Ok(match kind {
            BindKind::Module => Stmt::Module { name, expr, span },
            BindKind::Let => Stmt::Let { name, expr, span },
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Ident(name) if name == "coker" => {
                self.bump();
                let rows = self.matrix()?;
                let mut twists = None;
                if let Tok::Ident(kw) = self.peek() {
                    if kw == "twists" {
                        self.bump();
                        self.expect(Tok::LBracket, "`[`")?;
                        let mut ts = vec![self.signed_integer()?];
                        while self.peek() == &Tok::Comma {
                            self.bump();
                            ts.push(self.signed_integer()?);
                        }
                        self.expect(Tok::RBracket, "`]`")?;
                        twists = Some(ts);
                    }
                }
                Ok(Expr::Coker { rows, twists, span })
            }
            Tok::Ident(name) => {
                if self.peek2() == &Tok::LParen {
                    self.bump();
                    self.bump();
                    let mut args = Vec::new();
                    if self.peek() != &Tok::RParen {
                        args.push(self.expr()?);
                        while self.peek() == &Tok::Comma {
                            self.bump();
                            args.push(self.expr()?);
                        }
                    }
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(Expr::Call { name, args, span })
                } else {
                    self.bump();
                    Ok(Expr::Ident(name, span))
                }
            }
            Tok::Int(_) | Tok::Minus => Ok(Expr::Int(self.signed_integer()?, span)),
            Tok::LParen => {
                self.bump();
                let mut items = vec![self.poly_expr()?];
                while self.peek() == &Tok::Comma {
                    self.bump();
                    items.push(self.poly_expr()?);
                }
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Tuple { items, span })
            }
            _ => Err(self.err(&["expression"])),
        }
    }

    fn matrix(&mut self) -> Result<Vec<Vec<PolyExpr>>, ParseError> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut rows = vec![self.matrix_row()?];
        while self.peek() == &Tok::Comma {
            self.bump();
            rows.push(self.matrix_row()?);
        }
        self.expect(Tok::RBracket, "`]`")?;
        Ok(rows)
    }

    fn matrix_row(&mut self) -> Result<Vec<PolyExpr>, ParseError> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut row = vec![self.poly_expr()?];
        while self.peek() == &Tok::Comma {
            self.bump();
            row.push(self.poly_expr()?);
        }
        self.expect(Tok::RBracket, "`]`")?;
        Ok(row)
    }

    // poly := term (('+'|'-') term)*
    fn poly_expr(&mut self) -> Result<PolyExpr, ParseError> {
        let mut acc = self.poly_term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.poly_term()?;
                    acc = PolyExpr::Add(Box::new(acc), Box::new(rhs));
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.poly_term()?;
                    acc = PolyExpr::Sub(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor ('*' factor)*
    fn poly_term(&mut self) -> Result<PolyExpr, ParseError> {
        let mut acc = self.poly_factor()?;
        while self.peek() == &Tok::Star {
            self.bump();
            let rhs = self.poly_factor()?;
            acc = PolyExpr::Mul(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    // factor := atom ('^' INT)?
    fn poly_factor(&mut self) -> Result<PolyExpr, ParseError> {
        let atom = self.poly_atom()?;
        if self.peek() == &Tok::Caret {
            self.bump();
            let e = self.integer()?;
            if e > u32::MAX as u64 {
                return Err(ParseError {
                    span: self.span(),
                    found: format!("exponent {e}"),
                    expected: vec![],
                    message: Some("exponent too large".into()),
                });
            }
            return Ok(PolyExpr::Pow(Box::new(atom), e as u32));
        }
        Ok(atom)
    }

    fn poly_atom(&mut self) -> Result<PolyExpr, ParseError> {
        match self.peek().clone() {
            Tok::Minus => {
                self.bump();
                let inner = self.poly_atom()?;
                Ok(PolyExpr::Neg(Box::new(inner)))
            }
            Tok::Ident(v) => {
                self.bump();
                Ok(PolyExpr::Var(v))
            }
            Tok::Int(n) => {
                self.bump();
                Ok(PolyExpr::Int(n))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.poly_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.err(&["variable", "integer", "`(`", "`-`"])),
        }
    }
}

enum BindKind {
    Module,
    Let,
}
