//! Smooth-function expression trees and their text syntax.
//!
//! Grammar (usual precedence, `^` binds tightest and takes an integer
//! exponent):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ('-'? integer | '(' '-'? integer ')'))?
//! atom   := number | variable | func '(' expr ')' | '(' expr ')'
//! ```
//!
//! Variables are `x1, x2, ...` with aliases `x = x1`, `y = x2`, `t = x3`.
//! Numbers are integers, decimals or `p/q` (the latter simply parse as a
//! quotient of constants and are folded).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use thiserror::Error;

use crate::algebra::{parse_rational, rat, AlgebraError, Monomial, Polynomial, Rational};
use crate::scalar::{Scalar, ScalarError};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(Rational),
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i32),
    Exp(Box<Expr>),
    Log(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character `{0}` at offset {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token `{0}`")]
    UnexpectedToken(String),
    #[error("unknown identifier `{0}`")]
    UnknownIdent(String),
    #[error("invalid number `{0}`")]
    BadNumber(String),
    #[error("division by the zero constant")]
    DivisionByZero,
}

/// Failures while evaluating an expression.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("non-invertible denominator")]
    NonInvertible,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("variable x{} is out of range (arity {arity})", index + 1)]
    Arity { index: usize, arity: usize },
}

/// Resolves a variable name to its index.
pub fn variable_index(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        "t" => Some(2),
        _ => {
            let n: usize = name.strip_prefix('x')?.parse().ok()?;
            (n >= 1).then(|| n - 1)
        }
    }
}

/// Conventional display name: `x, y, t` style when `short`, else `x1, x2, ...`.
pub fn variable_name(i: usize, short: bool) -> String {
    match (short, i) {
        (true, 0) => "x".into(),
        (true, 1) => "y".into(),
        (true, 2) => "t".into(),
        _ => format!("x{}", i + 1),
    }
}

/// A parsed expression together with the variable spellings the input used.
#[derive(Clone, Debug, PartialEq)]
pub struct Parsed {
    pub expr: Expr,
    pub names: BTreeMap<usize, String>,
}

impl Parsed {
    /// Name for variable `i`: as spelled in the input, else `x{i+1}`.
    pub fn name(&self, i: usize) -> String {
        self.names.get(&i).cloned().unwrap_or_else(|| format!("x{}", i + 1))
    }
}

pub fn parse(s: &str) -> Result<Parsed, ParseError> {
    let tokens = tokenize(s)?;
    let mut p = Parser { tokens, pos: 0, names: BTreeMap::new() };
    let expr = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(ParseError::UnexpectedToken(t.to_string()));
    }
    Ok(Parsed { expr, names: p.names })
}

impl std::str::FromStr for Expr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s).map(|p| p.expr)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Op(char),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Num(s) | Token::Ident(s) => f.write_str(s),
            Token::Op(c) => write!(f, "{c}"),
        }
    }
}

fn tokenize(s: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(ParseError::UnexpectedChar(c, i));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    names: BTreeMap<usize, String>,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<(), ParseError> {
        match self.next() {
            Some(Token::Op(c)) if c == op => Ok(()),
            Some(t) => Err(ParseError::UnexpectedToken(t.to_string())),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = lhs + self.term()?;
            } else if self.eat('-') {
                lhs = lhs - self.term()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = lhs * self.unary()?;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                lhs = match (lhs, rhs) {
                    (_, Expr::Const(d)) if num_traits::Zero::is_zero(&d) => return Err(ParseError::DivisionByZero),
                    (Expr::Const(n), Expr::Const(d)) => Expr::Const(n / d),
                    (l, r) => l / r,
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(match self.unary()? {
                Expr::Const(c) => Expr::Const(-c),
                e => -e,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let negative = self.eat('-');
        let e = match self.next() {
            Some(Token::Num(s)) => s.parse::<i32>().map_err(|_| ParseError::BadNumber(s))?,
            Some(t) => return Err(ParseError::UnexpectedToken(t.to_string())),
            None => return Err(ParseError::UnexpectedEnd),
        };
        if paren {
            self.expect(')')?;
        }
        Ok(base.pow(if negative { -e } else { e }))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.next() {
            Some(Token::Num(s)) => parse_rational(&s)
                .map(Expr::Const)
                .map_err(|_| ParseError::BadNumber(s)),
            Some(Token::Op('(')) => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Token::Ident(name)) => {
                let func = match name.as_str() {
                    "exp" => Some(Expr::exp as fn(Expr) -> Expr),
                    "log" | "ln" => Some(Expr::log as fn(Expr) -> Expr),
                    "sin" => Some(Expr::sin as fn(Expr) -> Expr),
                    "cos" => Some(Expr::cos as fn(Expr) -> Expr),
                    _ => None,
                };
                if let Some(f) = func {
                    self.expect('(')?;
                    let arg = self.expr()?;
                    self.expect(')')?;
                    return Ok(f(arg));
                }
                let i = variable_index(&name).ok_or(ParseError::UnknownIdent(name.clone()))?;
                self.names.entry(i).or_insert(name);
                Ok(Expr::Var(i))
            }
            Some(t) => Err(ParseError::UnexpectedToken(t.to_string())),
            None => Err(ParseError::UnexpectedEnd),
        }
    }
}

impl Expr {
    pub fn var(i: usize) -> Self {
        Expr::Var(i)
    }

    pub fn constant(c: Rational) -> Self {
        Expr::Const(c)
    }

    pub fn int(n: i64) -> Self {
        Expr::Const(rat(n))
    }

    pub fn pow(self, e: i32) -> Self {
        Expr::Pow(Box::new(self), e)
    }

    pub fn exp(self) -> Self {
        Expr::Exp(Box::new(self))
    }

    pub fn log(self) -> Self {
        Expr::Log(Box::new(self))
    }

    pub fn sin(self) -> Self {
        Expr::Sin(Box::new(self))
    }

    pub fn cos(self) -> Self {
        Expr::Cos(Box::new(self))
    }

    /// One more than the largest variable index used.
    pub fn arity(&self) -> usize {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(i) => i + 1,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.arity().max(b.arity()),
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Exp(a) | Expr::Log(a) | Expr::Sin(a) | Expr::Cos(a) => a.arity(),
        }
    }

    pub fn mentions(&self, var: usize) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(i) => *i == var,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.mentions(var) || b.mentions(var),
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Exp(a) | Expr::Log(a) | Expr::Sin(a) | Expr::Cos(a) => a.mentions(var),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var(_) => 0,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => 1 + a.depth().max(b.depth()),
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Exp(a) | Expr::Log(a) | Expr::Sin(a) | Expr::Cos(a) => 1 + a.depth(),
        }
    }

    /// Converts to a polynomial in `nvars` variables. Fails on elementary
    /// function nodes, negative powers and division by non-constants.
    pub fn to_polynomial(&self, nvars: usize) -> Result<Polynomial, AlgebraError> {
        let nvars = nvars.max(self.arity());
        let non_poly = || AlgebraError::NonPolynomial(self.to_string());
        Ok(match self {
            Expr::Const(c) => Polynomial::constant(c.clone(), nvars),
            Expr::Var(i) => Polynomial::var(*i, nvars),
            Expr::Add(a, b) => a.to_polynomial(nvars)? + b.to_polynomial(nvars)?,
            Expr::Sub(a, b) => a.to_polynomial(nvars)? - b.to_polynomial(nvars)?,
            Expr::Mul(a, b) => a.to_polynomial(nvars)? * b.to_polynomial(nvars)?,
            Expr::Neg(a) => -a.to_polynomial(nvars)?,
            Expr::Div(a, b) => {
                let d = b.to_polynomial(nvars)?;
                let inv = Scalar::inv(&d).ok_or_else(non_poly)?;
                a.to_polynomial(nvars)? * inv
            }
            Expr::Pow(a, e) if *e >= 0 => a.to_polynomial(nvars)?.pow(*e as u32),
            _ => return Err(non_poly()),
        })
    }

    /// `true` when [`Expr::to_polynomial`] succeeds.
    pub fn is_polynomial(&self) -> bool {
        self.to_polynomial(0).is_ok()
    }

    /// Direct scalar evaluation. The scalar context (precision, number of
    /// symbolic variables) is taken from the first coordinate.
    pub fn eval<S: Scalar>(&self, point: &[S]) -> Result<S, EvalError> {
        match point.first() {
            Some(p0) => self.eval_in(point, &p0.ctx()),
            None => Err(EvalError::Arity { index: 0, arity: 0 }),
        }
    }

    /// Direct scalar evaluation with an explicit scalar context.
    pub fn eval_in<S: Scalar>(&self, point: &[S], ctx: &S::Ctx) -> Result<S, EvalError> {
        self.eval_inner(point, ctx)
    }

    fn eval_inner<S: Scalar>(&self, point: &[S], ctx: &S::Ctx) -> Result<S, EvalError> {
        Ok(match self {
            Expr::Const(c) => S::from_rational(c, ctx),
            Expr::Var(i) => point
                .get(*i)
                .cloned()
                .ok_or(EvalError::Arity { index: *i, arity: point.len() })?,
            Expr::Add(a, b) => a.eval_inner(point, ctx)?.add(&b.eval_inner(point, ctx)?),
            Expr::Sub(a, b) => a.eval_inner(point, ctx)?.sub(&b.eval_inner(point, ctx)?),
            Expr::Mul(a, b) => a.eval_inner(point, ctx)?.mul(&b.eval_inner(point, ctx)?),
            Expr::Div(a, b) => {
                let d = b.eval_inner(point, ctx)?.inv().ok_or(EvalError::NonInvertible)?;
                a.eval_inner(point, ctx)?.mul(&d)
            }
            Expr::Neg(a) => a.eval_inner(point, ctx)?.neg(),
            Expr::Pow(a, e) => {
                let base = a.eval_inner(point, ctx)?;
                let base = if *e < 0 { base.inv().ok_or(EvalError::NonInvertible)? } else { base };
                let mut acc = S::one(&base.ctx());
                for _ in 0..e.unsigned_abs() {
                    acc = acc.mul(&base);
                }
                acc
            }
            Expr::Exp(a) => a.eval_inner(point, ctx)?.exp()?,
            Expr::Log(a) => a.eval_inner(point, ctx)?.ln()?,
            Expr::Sin(a) => a.eval_inner(point, ctx)?.sin()?,
            Expr::Cos(a) => a.eval_inner(point, ctx)?.cos()?,
        })
    }

    /// Expression form of a polynomial.
    pub fn from_polynomial(p: &Polynomial) -> Expr {
        let term = |m: &Monomial, c: &Rational| {
            m.iter().fold(Expr::Const(c.clone()), |acc, (v, e)| {
                let factor = if e == 1 { Expr::Var(v) } else { Expr::Var(v).pow(e as i32) };
                acc * factor
            })
        };
        p.terms()
            .rev()
            .map(|(m, c)| term(m, c))
            .reduce(|a, b| a + b)
            .unwrap_or_else(|| Expr::int(0))
    }

    /// Formats with variable names taken from `name`.
    pub fn fmt_with(&self, name: &dyn Fn(usize) -> String) -> String {
        fn prec(e: &Expr) -> u8 {
            match e {
                Expr::Add(..) | Expr::Sub(..) => 1,
                Expr::Mul(..) | Expr::Div(..) => 2,
                Expr::Neg(_) => 3,
                Expr::Pow(..) => 4,
                Expr::Const(c) if !c.is_integer() || num_traits::Signed::is_negative(c) => 2,
                _ => 5,
            }
        }
        let wrap = |e: &Expr, min: u8| {
            let s = e.fmt_with(name);
            if prec(e) < min {
                format!("({s})")
            } else {
                s
            }
        };
        match self {
            Expr::Const(c) => c.to_string(),
            Expr::Var(i) => name(*i),
            Expr::Add(a, b) => format!("{} + {}", wrap(a, 1), wrap(b, 2)),
            Expr::Sub(a, b) => format!("{} - {}", wrap(a, 1), wrap(b, 2)),
            Expr::Mul(a, b) => format!("{}*{}", wrap(a, 2), wrap(b, 3)),
            Expr::Div(a, b) => format!("{}/{}", wrap(a, 2), wrap(b, 3)),
            Expr::Neg(a) => format!("-{}", wrap(a, 3)),
            Expr::Pow(a, e) if *e < 0 => format!("{}^({e})", wrap(a, 5)),
            Expr::Pow(a, e) => format!("{}^{e}", wrap(a, 5)),
            Expr::Exp(a) => format!("exp({})", a.fmt_with(name)),
            Expr::Log(a) => format!("log({})", a.fmt_with(name)),
            Expr::Sin(a) => format!("sin({})", a.fmt_with(name)),
            Expr::Cos(a) => format!("cos({})", a.fmt_with(name)),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&|i| format!("x{}", i + 1)))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $variant:ident) => {
        impl $tr for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

/// Expressions as a coefficient ring: lifting an expression with symbolic
/// coordinates yields its derivatives as expressions. Constants are folded
/// and the identities `0 + a`, `1 * a`, `0 * a` applied; no other
/// simplification is attempted, so `is_zero` only recognizes the zero
/// constant.
impl Scalar for Expr {
    type Ctx = ();

    fn ctx(&self) {}
    fn from_rational(r: &Rational, _: &()) -> Self {
        Expr::Const(r.clone())
    }
    fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Expr::Const(a), Expr::Const(b)) => Expr::Const(a + b),
            (a, b) if Scalar::is_zero(b) => a.clone(),
            (a, b) if Scalar::is_zero(a) => b.clone(),
            (a, Expr::Neg(b)) => a.clone() - (**b).clone(),
            (a, b) => a.clone() + b.clone(),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        match (self, o) {
            (Expr::Const(a), Expr::Const(b)) => Expr::Const(a - b),
            (a, b) if Scalar::is_zero(b) => a.clone(),
            (a, b) if Scalar::is_zero(a) => Scalar::neg(b),
            (a, b) => a.clone() - b.clone(),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        let is = |e: &Expr, v: i64| matches!(e, Expr::Const(c) if *c == rat(v));
        match (self, o) {
            (Expr::Const(a), Expr::Const(b)) => Expr::Const(a * b),
            (a, b) if Scalar::is_zero(a) || Scalar::is_zero(b) => Expr::int(0),
            (a, b) if is(a, 1) => b.clone(),
            (a, b) if is(b, 1) => a.clone(),
            (a, b) if is(a, -1) => Scalar::neg(b),
            (a, b) if is(b, -1) => Scalar::neg(a),
            (a, b) => a.clone() * b.clone(),
        }
    }
    fn neg(&self) -> Self {
        match self {
            Expr::Const(c) => Expr::Const(-c),
            Expr::Neg(a) => (**a).clone(),
            a => -a.clone(),
        }
    }
    fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if num_traits::Zero::is_zero(c))
    }
    fn inv(&self) -> Option<Self> {
        match self {
            Expr::Const(c) => Scalar::inv(c).map(Expr::Const),
            a => Some(Expr::int(1) / a.clone()),
        }
    }
    fn exp(&self) -> Result<Self, ScalarError> {
        Ok(match self {
            Expr::Const(c) if num_traits::Zero::is_zero(c) => Expr::int(1),
            a => a.clone().exp(),
        })
    }
    fn ln(&self) -> Result<Self, ScalarError> {
        match self {
            Expr::Const(c) if num_traits::Signed::is_positive(c) && *c != rat(1) => Ok(self.clone().log()),
            Expr::Const(c) => Scalar::ln(c).map(Expr::Const),
            a => Ok(a.clone().log()),
        }
    }
    fn sin(&self) -> Result<Self, ScalarError> {
        Ok(match self {
            Expr::Const(c) if num_traits::Zero::is_zero(c) => Expr::int(0),
            a => a.clone().sin(),
        })
    }
    fn cos(&self) -> Result<Self, ScalarError> {
        Ok(match self {
            Expr::Const(c) if num_traits::Zero::is_zero(c) => Expr::int(1),
            a => a.clone().cos(),
        })
    }
    fn is_exact() -> bool {
        true
    }
}
