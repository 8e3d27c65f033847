//! Session syntax tree with source spans and the canonical pretty-printer.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

/// Polynomial expression over not-yet-resolved identifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyExpr {
    Var(String),
    Int(u64),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    fn precedence(&self) -> u8 {
        match self {
            PolyExpr::Add(..) | PolyExpr::Sub(..) => 1,
            PolyExpr::Neg(..) => 2,
            PolyExpr::Mul(..) => 3,
            PolyExpr::Pow(..) => 4,
            PolyExpr::Var(..) | PolyExpr::Int(..) => 5,
        }
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyExpr::Var(v) => write!(f, "{v}"),
            PolyExpr::Int(n) => write!(f, "{n}"),
            PolyExpr::Neg(inner) => {
                if inner.precedence() < 2 {
                    write!(f, "-({inner})")
                } else {
                    write!(f, "-{inner}")
                }
            }
            PolyExpr::Add(a, b) => {
                // Right operand needs parens only when it is itself a sum.
                if b.precedence() <= 1 {
                    write!(f, "{a} + ({b})")
                } else {
                    write!(f, "{a} + {b}")
                }
            }
            PolyExpr::Sub(a, b) => {
                if b.precedence() <= 2 {
                    write!(f, "{a} - ({b})")
                } else {
                    write!(f, "{a} - {b}")
                }
            }
            PolyExpr::Mul(a, b) => {
                let wrap = |e: &PolyExpr, right: bool| e.precedence() < 3 || (right && e.precedence() == 3);
                match (wrap(a, false), wrap(b, true)) {
                    (false, false) => write!(f, "{a}*{b}"),
                    (true, false) => write!(f, "({a})*{b}"),
                    (false, true) => write!(f, "{a}*({b})"),
                    (true, true) => write!(f, "({a})*({b})"),
                }
            }
            PolyExpr::Pow(base, e) => {
                if base.precedence() < 5 {
                    write!(f, "({base})^{e}")
                } else {
                    write!(f, "{base}^{e}")
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Ident(String, Span),
    Int(i64, Span),
    Call {
        name: String,
        args: Vec<Expr>,
        span: Span,
    },
    Coker {
        rows: Vec<Vec<PolyExpr>>,
        twists: Option<Vec<i64>>,
        span: Span,
    },
    /// Parenthesized list of polynomials: an inline ideal or cut sequence.
    Tuple {
        items: Vec<PolyExpr>,
        span: Span,
    },
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Ident(name, _) => write!(f, "{name}"),
            Expr::Int(n, _) => write!(f, "{n}"),
            Expr::Call { name, args, .. } => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Expr::Coker { rows, twists, .. } => {
                write!(f, "coker [")?;
                for (i, row) in rows.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "[")?;
                    for (j, p) in row.iter().enumerate() {
                        if j > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{p}")?;
                    }
                    write!(f, "]")?;
                }
                write!(f, "]")?;
                if let Some(ts) = twists {
                    write!(f, " twists [")?;
                    for (i, t) in ts.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{t}")?;
                    }
                    write!(f, "]")?;
                }
                Ok(())
            }
            Expr::Tuple { items, .. } => {
                write!(f, "(")?;
                for (i, p) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    Ring {
        name: String,
        prime: u64,
        vars: Vec<String>,
        relations: Vec<PolyExpr>,
        span: Span,
    },
    Ideal {
        name: String,
        gens: Vec<PolyExpr>,
        span: Span,
    },
    Module {
        name: String,
        expr: Expr,
        span: Span,
    },
    Let {
        name: String,
        expr: Expr,
        span: Span,
    },
    Command {
        expr: Expr,
        span: Span,
    },
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Ring {
                name,
                prime,
                vars,
                relations,
                ..
            } => {
                write!(f, "ring {name} = GF({prime})[{}]", vars.join(", "))?;
                if !relations.is_empty() {
                    let rels: Vec<String> = relations.iter().map(|r| r.to_string()).collect();
                    write!(f, "/({})", rels.join(", "))?;
                }
                write!(f, ";")
            }
            Stmt::Ideal { name, gens, .. } => {
                let gs: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                write!(f, "ideal {name} = ({});", gs.join(", "))
            }
            Stmt::Module { name, expr, .. } => write!(f, "module {name} = {expr};"),
            Stmt::Let { name, expr, .. } => write!(f, "let {name} = {expr};"),
            Stmt::Command { expr, .. } => write!(f, "{expr};"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Session {
    pub stmts: Vec<Stmt>,
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
