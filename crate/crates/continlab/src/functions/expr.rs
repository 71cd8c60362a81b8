//! Expression mini-language for function bodies and predicates.
//!
//! Grammar: real literals, coordinates `x1..xn` (and `y1..yn` in predicate
//! position), binary `+ - * / ^`, unary `-`, the functions `sin cos abs min
//! max sqrt`, and one piecewise guard `if(cond, a, b)` where `cond` is a
//! comparison between two expressions.  Parse errors carry the byte position.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("evaluation error: {0}")]
    Eval(String),
}

fn parse_err<T>(position: usize, message: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError::Parse {
        position,
        message: message.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Expr {
    Const(f64),
    /// `x{i}` is Coord(i-1); `y{i}` is Coord(n + i - 1) after binding.
    Coord(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Abs(Box<Expr>),
    Sqrt(Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
    If(Box<Cond>, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cond {
    pub lhs: Expr,
    pub op: CmpOp,
    pub rhs: Expr,
}

impl Cond {
    pub fn eval(&self, vars: &[f64]) -> Result<bool, ExprError> {
        let l = self.lhs.eval(vars)?;
        let r = self.rhs.eval(vars)?;
        Ok(match self.op {
            CmpOp::Lt => l < r,
            CmpOp::Le => l <= r,
            CmpOp::Gt => l > r,
            CmpOp::Ge => l >= r,
            CmpOp::Eq => l == r,
            CmpOp::Ne => l != r,
        })
    }
}

impl Expr {
    pub fn eval(&self, vars: &[f64]) -> Result<f64, ExprError> {
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Coord(i) => *vars
                .get(*i)
                .ok_or_else(|| ExprError::Eval(format!("coordinate index {} out of range", i + 1)))?,
            Expr::Neg(e) => -e.eval(vars)?,
            Expr::Add(a, b) => a.eval(vars)? + b.eval(vars)?,
            Expr::Sub(a, b) => a.eval(vars)? - b.eval(vars)?,
            Expr::Mul(a, b) => a.eval(vars)? * b.eval(vars)?,
            Expr::Div(a, b) => {
                let d = b.eval(vars)?;
                if d == 0.0 {
                    return Err(ExprError::Eval(
                        "division by zero outside a piecewise guard".into(),
                    ));
                }
                a.eval(vars)? / d
            }
            Expr::Pow(a, b) => a.eval(vars)?.powf(b.eval(vars)?),
            Expr::Sin(e) => e.eval(vars)?.sin(),
            Expr::Cos(e) => e.eval(vars)?.cos(),
            Expr::Abs(e) => e.eval(vars)?.abs(),
            Expr::Sqrt(e) => {
                let v = e.eval(vars)?;
                if v < 0.0 {
                    return Err(ExprError::Eval("sqrt of a negative value".into()));
                }
                v.sqrt()
            }
            Expr::Min(a, b) => a.eval(vars)?.min(b.eval(vars)?),
            Expr::Max(a, b) => a.eval(vars)?.max(b.eval(vars)?),
            Expr::If(c, a, b) => {
                if c.eval(vars)? {
                    a.eval(vars)?
                } else {
                    b.eval(vars)?
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(ExprError::Eval("expression produced a non-finite value".into()))
        }
    }

    /// Parse a function-body expression with coordinates `x1..x{arity}`.
    pub fn parse(src: &str, arity: usize) -> Result<Expr, ExprError> {
        Parser::new(src, arity, false).parse_full()
    }
}

/// A boolean predicate over a pair of points, written with `x1.., y1..` and a
/// comparison; `&` and `|` combine comparisons.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Pred {
    Cmp(Cond),
    And(Box<Pred>, Box<Pred>),
    Or(Box<Pred>, Box<Pred>),
}

impl Pred {
    /// Evaluate with the concatenated variable vector `[x..., y...]`.
    pub fn eval(&self, vars: &[f64]) -> Result<bool, ExprError> {
        Ok(match self {
            Pred::Cmp(c) => c.eval(vars)?,
            Pred::And(a, b) => a.eval(vars)? && b.eval(vars)?,
            Pred::Or(a, b) => a.eval(vars)? || b.eval(vars)?,
        })
    }

    /// Parse a predicate over `x1..x{arity}` and `y1..y{arity}`.
    pub fn parse(src: &str, arity: usize) -> Result<Pred, ExprError> {
        let mut p = Parser::new(src, arity, true);
        let pred = p.parse_pred()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return parse_err(p.pos, "trailing input after predicate");
        }
        Ok(pred)
    }

    /// Parse a membership predicate over a single point `x1..x{arity}`.
    pub fn parse_membership(src: &str, arity: usize) -> Result<Pred, ExprError> {
        let mut p = Parser::new(src, arity, false);
        let pred = p.parse_pred()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return parse_err(p.pos, "trailing input after predicate");
        }
        Ok(pred)
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    arity: usize,
    allow_y: bool,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, arity: usize, allow_y: bool) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            arity,
            allow_y,
        }
    }

    fn parse_full(&mut self) -> Result<Expr, ExprError> {
        let e = self.parse_expr()?;
        self.skip_ws();
        if self.pos < self.src.len() {
            return parse_err(self.pos, "trailing input after expression");
        }
        Ok(e)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            parse_err(self.pos, format!("expected '{}'", c as char))
        }
    }

    fn parse_expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.parse_term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.parse_unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.parse_unary()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.parse_unary()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat(b'-') {
            let e = self.parse_unary()?;
            return Ok(Expr::Neg(Box::new(e)));
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Expr, ExprError> {
        let base = self.parse_atom()?;
        if self.eat(b'^') {
            // Right-associative exponent.
            let exp = self.parse_unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Expr, ExprError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.parse_expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.parse_number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let ident = self.parse_ident();
                match ident.as_str() {
                    "sin" | "cos" | "abs" | "sqrt" => {
                        self.expect(b'(')?;
                        let arg = self.parse_expr()?;
                        self.expect(b')')?;
                        Ok(match ident.as_str() {
                            "sin" => Expr::Sin(Box::new(arg)),
                            "cos" => Expr::Cos(Box::new(arg)),
                            "abs" => Expr::Abs(Box::new(arg)),
                            _ => Expr::Sqrt(Box::new(arg)),
                        })
                    }
                    "min" | "max" => {
                        self.expect(b'(')?;
                        let a = self.parse_expr()?;
                        self.expect(b',')?;
                        let b = self.parse_expr()?;
                        self.expect(b')')?;
                        Ok(if ident == "min" {
                            Expr::Min(Box::new(a), Box::new(b))
                        } else {
                            Expr::Max(Box::new(a), Box::new(b))
                        })
                    }
                    "if" => {
                        self.expect(b'(')?;
                        let lhs = self.parse_expr()?;
                        let op = self.parse_cmp_op()?;
                        let rhs = self.parse_expr()?;
                        self.expect(b',')?;
                        let a = self.parse_expr()?;
                        self.expect(b',')?;
                        let b = self.parse_expr()?;
                        self.expect(b')')?;
                        Ok(Expr::If(
                            Box::new(Cond { lhs, op, rhs }),
                            Box::new(a),
                            Box::new(b),
                        ))
                    }
                    _ => self.parse_coord(&ident, start),
                }
            }
            _ => parse_err(start, "expected a literal, coordinate, function or '('"),
        }
    }

    fn parse_coord(&mut self, ident: &str, start: usize) -> Result<Expr, ExprError> {
        let (prefix, rest) = ident.split_at(1);
        let idx: usize = match rest.parse() {
            Ok(i) if i >= 1 => i,
            _ => return parse_err(start, format!("unknown identifier '{ident}'")),
        };
        if idx > self.arity {
            return parse_err(
                start,
                format!("coordinate '{ident}' exceeds arity {}", self.arity),
            );
        }
        match prefix {
            "x" => Ok(Expr::Coord(idx - 1)),
            "y" if self.allow_y => Ok(Expr::Coord(self.arity + idx - 1)),
            _ => parse_err(start, format!("unknown identifier '{ident}'")),
        }
    }

    fn parse_ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        self.src[start..self.pos].to_string()
    }

    fn parse_number(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_digit()
                || self.bytes[self.pos] == b'.'
                || (self.bytes[self.pos] == b'e' || self.bytes[self.pos] == b'E')
                || ((self.bytes[self.pos] == b'+' || self.bytes[self.pos] == b'-')
                    && self.pos > start
                    && (self.bytes[self.pos - 1] == b'e' || self.bytes[self.pos - 1] == b'E')))
        {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse::<f64>()
            .map(Expr::Const)
            .map_err(|_| ExprError::Parse {
                position: start,
                message: format!("invalid number '{}'", &self.src[start..self.pos]),
            })
    }

    fn parse_cmp_op(&mut self) -> Result<CmpOp, ExprError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let (op, len) = if rest.starts_with("<=") {
            (CmpOp::Le, 2)
        } else if rest.starts_with(">=") {
            (CmpOp::Ge, 2)
        } else if rest.starts_with("==") {
            (CmpOp::Eq, 2)
        } else if rest.starts_with("!=") {
            (CmpOp::Ne, 2)
        } else if rest.starts_with('<') {
            (CmpOp::Lt, 1)
        } else if rest.starts_with('>') {
            (CmpOp::Gt, 1)
        } else {
            return parse_err(self.pos, "expected a comparison operator");
        };
        self.pos += len;
        Ok(op)
    }

    fn parse_pred(&mut self) -> Result<Pred, ExprError> {
        let mut lhs = self.parse_pred_atom()?;
        loop {
            match self.peek() {
                Some(b'&') => {
                    self.pos += 1;
                    let rhs = self.parse_pred_atom()?;
                    lhs = Pred::And(Box::new(lhs), Box::new(rhs));
                }
                Some(b'|') => {
                    self.pos += 1;
                    let rhs = self.parse_pred_atom()?;
                    lhs = Pred::Or(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_pred_atom(&mut self) -> Result<Pred, ExprError> {
        self.skip_ws();
        // Parenthesized predicate or comparison: try predicate first.
        if self.peek() == Some(b'(') {
            let save = self.pos;
            self.pos += 1;
            if let Ok(inner) = self.parse_pred() {
                if self.eat(b')') {
                    // Only accept if not actually an arithmetic group.
                    match self.peek() {
                        Some(b'&') | Some(b'|') | None => return Ok(inner),
                        _ => {}
                    }
                }
            }
            self.pos = save;
        }
        let lhs = self.parse_expr()?;
        let op = self.parse_cmp_op()?;
        let rhs = self.parse_expr()?;
        Ok(Pred::Cmp(Cond { lhs, op, rhs }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_precedence() {
        let e = Expr::parse("3 + 5 * 2", 1).unwrap();
        assert_eq!(e.eval(&[0.0]).unwrap(), 13.0);
        let e = Expr::parse("2 * x1 ^ 2 - 1", 1).unwrap();
        assert_eq!(e.eval(&[3.0]).unwrap(), 17.0);
        let e = Expr::parse("-x1^2", 1).unwrap();
        assert_eq!(e.eval(&[2.0]).unwrap(), -4.0);
        let e = Expr::parse("(x1 + x2) / 2", 2).unwrap();
        assert_eq!(e.eval(&[1.0, 3.0]).unwrap(), 2.0);
    }

    #[test]
    fn functions_and_guard() {
        let e = Expr::parse("min(x1, x2)", 2).unwrap();
        assert_eq!(e.eval(&[0.3, 0.7]).unwrap(), 0.3);
        let e = Expr::parse("if(x1 > 0, sin(1/x1), 1)", 1).unwrap();
        assert_eq!(e.eval(&[0.0]).unwrap(), 1.0);
        assert!((e.eval(&[2.0 / std::f64::consts::PI]).unwrap() - 1.0).abs() < 1e-12);
        let e = Expr::parse("sqrt(abs(x1))", 1).unwrap();
        assert_eq!(e.eval(&[-4.0]).unwrap(), 2.0);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = Expr::parse("2 + ", 1).unwrap_err();
        match err {
            ExprError::Parse { position, .. } => assert_eq!(position, 4),
            _ => panic!("expected parse error"),
        }
        let err = Expr::parse("x3", 2).unwrap_err();
        assert!(matches!(err, ExprError::Parse { position: 0, .. }));
        assert!(Expr::parse("foo(x1)", 1).is_err());
        assert!(Expr::parse("x1 x2", 2).is_err());
    }

    #[test]
    fn division_by_zero_is_guarded() {
        let e = Expr::parse("1 / x1", 1).unwrap();
        assert!(e.eval(&[0.0]).is_err());
        let guarded = Expr::parse("if(x1 != 0, 1 / x1, 0)", 1).unwrap();
        assert_eq!(guarded.eval(&[0.0]).unwrap(), 0.0);
    }

    #[test]
    fn predicates_over_pairs() {
        // x >= y componentwise in dimension 2.
        let p = Pred::parse("x1 >= y1 & x2 >= y2", 2).unwrap();
        assert!(p.eval(&[1.0, 1.0, 0.0, 0.5]).unwrap());
        assert!(!p.eval(&[1.0, 0.4, 0.0, 0.5]).unwrap());
        let p = Pred::parse("x1 > y1 | x2 > y2", 2).unwrap();
        assert!(p.eval(&[0.0, 1.0, 0.0, 0.5]).unwrap());
    }

    #[test]
    fn membership_predicate() {
        let p = Pred::parse_membership("x1^2 <= x2 & x2 <= 2*x1", 2).unwrap();
        assert!(p.eval(&[0.5, 0.5]).unwrap());
        assert!(!p.eval(&[0.5, 0.1]).unwrap());
    }

    #[test]
    fn scientific_notation() {
        let e = Expr::parse("1e-3 + 2.5E2", 1).unwrap();
        assert!((e.eval(&[0.0]).unwrap() - 250.001).abs() < 1e-12);
    }
}
