//! Arithmetic expressions for boundary data.
//!
//! Grammar (whitespace insensitive, `^` binds tighter than unary minus and
//! associates to the right):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! Functions: `sin cos exp abs sqrt log` (one argument) and `min max` (two).
//! Constants: `pi`, `e`. The set of variable names is fixed by the caller;
//! boundary data use `x`, `y` and `theta`.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("function `{name}` at position {pos} takes {expected} argument(s), got {found}")]
    Arity {
        pos: usize,
        name: String,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Abs,
    Sqrt,
    Log,
    Min,
    Max,
}

impl Func {
    fn lookup(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "abs" => Func::Abs,
            "sqrt" => Func::Sqrt,
            "log" => Func::Log,
            "min" => Func::Min,
            "max" => Func::Max,
            _ => return None,
        })
    }

    fn arity(self) -> usize {
        match self {
            Func::Min | Func::Max => 2,
            _ => 1,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Abs => "abs",
            Func::Sqrt => "sqrt",
            Func::Log => "log",
            Func::Min => "min",
            Func::Max => "max",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

/// Parsed expression tree. Variables are slots into the caller's binding list.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(usize),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

impl Expr {
    /// Evaluates with `vars[i]` bound to variable slot `i`.
    pub fn eval(&self, vars: &[f64]) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::Var(i) => vars[*i],
            Expr::Neg(e) => -e.eval(vars),
            Expr::Bin(op, l, r) => {
                let (l, r) = (l.eval(vars), r.eval(vars));
                match op {
                    BinOp::Add => l + r,
                    BinOp::Sub => l - r,
                    BinOp::Mul => l * r,
                    BinOp::Div => l / r,
                    BinOp::Pow => pow(l, r),
                }
            }
            Expr::Call(f, args) => {
                let x = args[0].eval(vars);
                match f {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Exp => x.exp(),
                    Func::Abs => x.abs(),
                    Func::Sqrt => x.sqrt(),
                    Func::Log => x.ln(),
                    Func::Min => x.min(args[1].eval(vars)),
                    Func::Max => x.max(args[1].eval(vars)),
                }
            }
        }
    }

    /// Fully parenthesised rendering that re-parses to an equivalent tree.
    pub fn display<'a>(&'a self, names: &'a [&'a str]) -> ExprDisplay<'a> {
        ExprDisplay { expr: self, names }
    }
}

/// Integer exponents go through `powi` so `x^3` is exact for negative `x`.
fn pow(base: f64, exponent: f64) -> f64 {
    if exponent.fract() == 0.0 && exponent.abs() <= i32::MAX as f64 {
        base.powi(exponent as i32)
    } else {
        base.powf(exponent)
    }
}

pub struct ExprDisplay<'a> {
    expr: &'a Expr,
    names: &'a [&'a str],
}

impl<'a> fmt::Display for ExprDisplay<'a> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |e: &'a Expr| ExprDisplay {
            expr: e,
            names: self.names,
        };
        match self.expr {
            // `{:?}` prints the shortest round-tripping decimal.
            Expr::Num(v) => {
                if *v < 0.0 {
                    write!(f, "(-{:?})", -v)
                } else {
                    write!(f, "{v:?}")
                }
            }
            Expr::Var(i) => write!(f, "{}", self.names[*i]),
            Expr::Neg(e) => write!(f, "(-{})", sub(e)),
            Expr::Bin(op, l, r) => write!(f, "({} {} {})", sub(l), op.symbol(), sub(r)),
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", sub(a))?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Parses `text` with the given variable names.
pub fn parse(text: &str, variables: &[&str]) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        variables,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    variables: &'a [&'a str],
}

impl Parser<'_> {
    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(b'+') => BinOp::Add,
                Some(b'-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(b'*') => BinOp::Mul,
                Some(b'/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.eat(b'^') {
            let exponent = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            None => Err(self.syntax("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.identifier(),
            Some(c) => Err(self.syntax(format!("unexpected `{}`", c as char))),
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
        };
        digits(self);
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            digits(self);
        }
        if self.pos < self.src.len() && matches!(self.src[self.pos], b'e' | b'E') {
            let save = self.pos;
            self.pos += 1;
            if self.pos < self.src.len() && matches!(self.src[self.pos], b'+' | b'-') {
                self.pos += 1;
            }
            if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                digits(self);
            } else {
                // `2e` is a number followed by an identifier, not an exponent.
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse::<f64>()
            .map(Expr::Num)
            .map_err(|_| ParseError::Syntax {
                pos: start,
                message: format!("malformed number `{text}`"),
            })
    }

    fn identifier(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        if self.peek() == Some(b'(') {
            let func = Func::lookup(name).ok_or_else(|| ParseError::UnknownIdentifier {
                pos: start,
                name: name.to_string(),
            })?;
            self.pos += 1;
            let mut args = vec![self.expr()?];
            while self.eat(b',') {
                args.push(self.expr()?);
            }
            if !self.eat(b')') {
                return Err(self.syntax("expected `,` or `)`"));
            }
            if args.len() != func.arity() {
                return Err(ParseError::Arity {
                    pos: start,
                    name: name.to_string(),
                    expected: func.arity(),
                    found: args.len(),
                });
            }
            return Ok(Expr::Call(func, args));
        }
        if let Some(i) = self.variables.iter().position(|v| *v == name) {
            return Ok(Expr::Var(i));
        }
        match name {
            "pi" => Ok(Expr::Num(std::f64::consts::PI)),
            "e" => Ok(Expr::Num(std::f64::consts::E)),
            _ => Err(ParseError::UnknownIdentifier {
                pos: start,
                name: name.to_string(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const XY: &[&str] = &["x", "y", "theta"];

    fn eval(text: &str, x: f64, y: f64, theta: f64) -> f64 {
        parse(text, XY).unwrap().eval(&[x, y, theta])
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(eval("1 + 2 * 3", 0.0, 0.0, 0.0), 7.0);
        assert_eq!(eval("2 ^ 3 ^ 2", 0.0, 0.0, 0.0), 512.0);
        assert_eq!(eval("-2 ^ 2", 0.0, 0.0, 0.0), -4.0);
        assert_eq!(eval("2 ^ -1", 0.0, 0.0, 0.0), 0.5);
        assert_eq!(eval("8 / 4 / 2", 0.0, 0.0, 0.0), 1.0);
        assert_eq!(eval("10 - 4 - 3", 0.0, 0.0, 0.0), 3.0);
        assert_eq!(eval("(1 + 2) * 3", 0.0, 0.0, 0.0), 9.0);
        assert_eq!(eval("1.5e2 + .5", 0.0, 0.0, 0.0), 150.5);
        assert_eq!(eval("max(x, y) - min(x, y)", 3.0, -1.0, 0.0), 4.0);
        assert_eq!(eval("-x^4", 2.0, 0.0, 0.0), -16.0);
    }

    #[test]
    fn boundary_examples() {
        use std::f64::consts::{FRAC_PI_2, PI};
        assert_eq!(eval("x", 1.0, 0.0, 0.0), 1.0);
        assert!((eval("cos(2*theta)", 0.0, 1.0, FRAC_PI_2) + 1.0).abs() < 1e-15);
        assert_eq!(eval("x^3", PI.cos(), PI.sin(), PI), -1.0);
        assert!((eval("pi", 0.0, 0.0, 0.0) - PI).abs() == 0.0);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse("x+*y", XY),
            Err(ParseError::Syntax {
                pos: 2,
                message: "unexpected `*`".into()
            })
        );
        assert!(matches!(
            parse("foo + 1", XY),
            Err(ParseError::UnknownIdentifier { pos: 0, .. })
        ));
        assert!(matches!(
            parse("1 + tan(x)", XY),
            Err(ParseError::UnknownIdentifier { pos: 4, .. })
        ));
        assert!(matches!(
            parse("max(x)", XY),
            Err(ParseError::Arity {
                expected: 2,
                found: 1,
                ..
            })
        ));
        assert!(matches!(
            parse("sin(x, y)", XY),
            Err(ParseError::Arity { .. })
        ));
        assert!(matches!(
            parse("(x", XY),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse("", XY),
            Err(ParseError::Syntax { pos: 0, .. })
        ));
        assert!(matches!(
            parse("x y", XY),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse("s", XY),
            Err(ParseError::UnknownIdentifier { .. })
        ));
        assert!(parse("s", &["s"]).is_ok());
    }

    fn arb_expr() -> impl Strategy<Value = String> {
        let leaf = prop_oneof![
            (0.0f64..10.0).prop_map(|v| format!("{v}")),
            Just("x".to_string()),
            Just("y".to_string()),
            Just("theta".to_string()),
            Just("pi".to_string()),
        ];
        leaf.prop_recursive(4, 32, 3, |inner| {
            prop_oneof![
                (
                    inner.clone(),
                    inner.clone(),
                    prop::sample::select(vec!["+", "-", "*", "/"])
                )
                    .prop_map(|(a, b, op)| format!("{a} {op} {b}")),
                (inner.clone(), 0u8..4).prop_map(|(a, k)| format!("({a})^{k}")),
                inner.clone().prop_map(|a| format!("-{a}")),
                (
                    inner.clone(),
                    prop::sample::select(vec!["sin", "cos", "abs", "exp"])
                )
                    .prop_map(|(a, f)| format!("{f}({a})")),
                (
                    inner.clone(),
                    inner,
                    prop::sample::select(vec!["min", "max"])
                )
                    .prop_map(|(a, b, f)| format!("{f}({a}, {b})")),
            ]
        })
    }

    proptest! {
        #[test]
        fn pretty_print_round_trips(text in arb_expr(), pts in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0, 0.0f64..6.3), 100)) {
            let e = parse(&text, XY).unwrap();
            let printed = e.display(XY).to_string();
            let again = parse(&printed, XY).unwrap();
            for (x, y, t) in pts {
                let a = e.eval(&[x, y, t]);
                let b = again.eval(&[x, y, t]);
                prop_assert!(a == b || (a.is_nan() && b.is_nan()) || (a - b).abs() <= 1e-14 * a.abs().max(1.0),
                    "{} vs {}: {} != {}", text, printed, a, b);
            }
        }
    }
}
