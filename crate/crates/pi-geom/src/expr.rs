//! Profile expressions: parsing, printing and 2-jet evaluation.
//!
//! Grammar (whitespace insignificant, `u` is the only variable):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' unary)?          -- right-associative
//! atom   := number | 'u' | name '(' expr ')' | '(' expr ')'
//! ```
//!
//! `^` binds tighter than unary minus (`-u^2` is `-(u^2)`, `2^-3` is
//! `2^(-3)`), `*`, `/`, `+`, `-` are left-associative, and there is no
//! implicit multiplication (`3u` is a syntax error). The callable
//! functions are `sin`, `cos`, `exp`, `ln`, `sinh`, `cosh`, `tanh`,
//! `sqrt`, `abs`.

use std::fmt;

use thiserror::Error;

use crate::jet::Jet2;

/// Unary nodes. `Neg` comes from the `-` prefix, the rest from
/// function-call syntax.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryFn {
    Neg,
    Sin,
    Cos,
    Exp,
    Ln,
    Sinh,
    Cosh,
    Tanh,
    Sqrt,
    Abs,
}

impl UnaryFn {
    fn name(self) -> &'static str {
        match self {
            UnaryFn::Neg => "neg",
            UnaryFn::Sin => "sin",
            UnaryFn::Cos => "cos",
            UnaryFn::Exp => "exp",
            UnaryFn::Ln => "ln",
            UnaryFn::Sinh => "sinh",
            UnaryFn::Cosh => "cosh",
            UnaryFn::Tanh => "tanh",
            UnaryFn::Sqrt => "sqrt",
            UnaryFn::Abs => "abs",
        }
    }

    fn from_name(name: &str) -> Option<UnaryFn> {
        Some(match name {
            "sin" => UnaryFn::Sin,
            "cos" => UnaryFn::Cos,
            "exp" => UnaryFn::Exp,
            "ln" => UnaryFn::Ln,
            "sinh" => UnaryFn::Sinh,
            "cosh" => UnaryFn::Cosh,
            "tanh" => UnaryFn::Tanh,
            "sqrt" => UnaryFn::Sqrt,
            "abs" => UnaryFn::Abs,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// Parsed expression tree for a profile function of `u`.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprAst {
    Const(f64),
    Var,
    Unary(UnaryFn, Box<ExprAst>),
    Binary(BinaryOp, Box<ExprAst>, Box<ExprAst>),
}

impl ExprAst {
    /// True when the subtree contains no occurrence of the variable.
    pub fn is_constant(&self) -> bool {
        match self {
            ExprAst::Const(_) => true,
            ExprAst::Var => false,
            ExprAst::Unary(_, a) => a.is_constant(),
            ExprAst::Binary(_, a, b) => a.is_constant() && b.is_constant(),
        }
    }
}

/// Parse failures, with the byte offset into the source text.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {}, found {found}", .expected.join(" or "))]
    Syntax { offset: usize, expected: Vec<&'static str>, found: String },
    #[error("unknown function `{name}` at byte {offset}")]
    UnknownFunction { offset: usize, name: String },
    #[error("expression nested deeper than {limit} levels at byte {offset}")]
    TooDeep { offset: usize, limit: usize },
}

/// Recursion bound for the parser (and thereby for evaluation, whose
/// depth equals the tree depth).
const MAX_DEPTH: usize = 128;

/// Evaluation failures: the node that hit the restriction and the value
/// it was fed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("domain error: {node}({arg}): {reason}")]
    Domain { node: &'static str, arg: f64, reason: &'static str },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            let start = self.pos;
            if self.pos >= self.src.len() {
                out.push((Tok::End, start));
                return Ok(out);
            }
            let b = self.src[self.pos];
            let tok = match b {
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'*' => Tok::Star,
                b'/' => Tok::Slash,
                b'^' => Tok::Caret,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'0'..=b'9' => {
                    out.push((self.number(start)?, start));
                    continue;
                }
                _ if b.is_ascii_alphabetic() || b == b'_' => {
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_owned();
                    out.push((Tok::Ident(name), start));
                    continue;
                }
                other => {
                    let found = if other.is_ascii_graphic() {
                        format!("`{}`", other as char)
                    } else {
                        format!("byte 0x{other:02x}")
                    };
                    return Err(ParseError::Syntax {
                        offset: start,
                        expected: vec!["number", "`u`", "function", "operator", "`(`", "`)`"],
                        found,
                    });
                }
            };
            self.pos += 1;
            out.push((tok, start));
        }
    }

    fn number(&mut self, start: usize) -> Result<Tok, ParseError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        if self.pos < self.src.len() && (self.src[self.pos] == b'e' || self.src[self.pos] == b'E') {
            let mark = self.pos;
            self.pos += 1;
            if self.pos < self.src.len() && (self.src[self.pos] == b'+' || self.src[self.pos] == b'-') {
                self.pos += 1;
            }
            if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            } else {
                // `2e` starts an identifier-like tail; treat the `e` as not
                // part of the number
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<f64>().map(Tok::Num).map_err(|_| ParseError::Syntax {
            offset: start,
            expected: vec!["number"],
            found: format!("`{text}`"),
        })
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn offset(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err(&self, expected: Vec<&'static str>) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            expected,
            found: self.peek().describe(),
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinaryOp::Add,
                Tok::Minus => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = ExprAst::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinaryOp::Mul,
                Tok::Slash => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = ExprAst::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    // every recursion cycle (parenthesized atoms, minus chains, power
    // exponents) passes through here, so one depth counter bounds them all
    fn unary(&mut self) -> Result<ExprAst, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::TooDeep { offset: self.offset(), limit: MAX_DEPTH });
        }
        let result = if matches!(self.peek(), Tok::Minus) {
            self.bump();
            let inner = self.unary()?;
            Ok(ExprAst::Unary(UnaryFn::Neg, Box::new(inner)))
        } else {
            self.power()
        };
        self.depth -= 1;
        result
    }

    fn power(&mut self) -> Result<ExprAst, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Tok::Caret) {
            self.bump();
            // right-associative; the exponent may carry a unary minus
            let exponent = self.unary()?;
            return Ok(ExprAst::Binary(BinaryOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprAst, ParseError> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(ExprAst::Const(n))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if !matches!(self.peek(), Tok::RParen) {
                    return Err(self.err(vec!["`)`"]));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                if matches!(self.peek(), Tok::LParen) {
                    let f = UnaryFn::from_name(&name)
                        .ok_or(ParseError::UnknownFunction { offset, name: name.clone() })?;
                    self.bump();
                    let arg = self.expr()?;
                    if !matches!(self.peek(), Tok::RParen) {
                        return Err(self.err(vec!["`)`"]));
                    }
                    self.bump();
                    Ok(ExprAst::Unary(f, Box::new(arg)))
                } else if name == "u" {
                    Ok(ExprAst::Var)
                } else {
                    Err(ParseError::Syntax {
                        offset,
                        expected: vec!["`u`", "function call"],
                        found: format!("`{name}`"),
                    })
                }
            }
            _ => Err(self.err(vec!["number", "`u`", "function call", "`(`", "`-`"])),
        }
    }
}

/// Parses an expression in the variable `u`.
pub fn parse(src: &str) -> Result<ExprAst, ParseError> {
    let toks = Lexer::new(src).tokens()?;
    let mut p = Parser { toks, at: 0, depth: 0 };
    if matches!(p.peek(), Tok::End) {
        return Err(p.err(vec!["expression"]));
    }
    let ast = p.expr()?;
    if !matches!(p.peek(), Tok::End) {
        return Err(p.err(vec!["operator", "end of input"]));
    }
    Ok(ast)
}

// precedence levels for the printer; higher binds tighter
const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_UNARY: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

fn write_prec(ast: &ExprAst, min: u8, out: &mut String) {
    let prec = match ast {
        ExprAst::Const(c) if *c < 0.0 => PREC_UNARY,
        ExprAst::Const(_) | ExprAst::Var => PREC_ATOM,
        ExprAst::Unary(UnaryFn::Neg, _) => PREC_UNARY,
        ExprAst::Unary(..) => PREC_ATOM,
        ExprAst::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => PREC_ADD,
        ExprAst::Binary(BinaryOp::Mul | BinaryOp::Div, ..) => PREC_MUL,
        ExprAst::Binary(BinaryOp::Pow, ..) => PREC_POW,
    };
    let parens = prec < min;
    if parens {
        out.push('(');
    }
    match ast {
        ExprAst::Const(c) => out.push_str(&format!("{c}")),
        ExprAst::Var => out.push('u'),
        ExprAst::Unary(UnaryFn::Neg, a) => {
            out.push('-');
            write_prec(a, PREC_UNARY, out);
        }
        ExprAst::Unary(f, a) => {
            out.push_str(f.name());
            out.push('(');
            write_prec(a, 0, out);
            out.push(')');
        }
        ExprAst::Binary(op, a, b) => {
            let (sym, left_min, right_min) = match op {
                BinaryOp::Add => (" + ", PREC_ADD, PREC_ADD + 1),
                BinaryOp::Sub => (" - ", PREC_ADD, PREC_ADD + 1),
                BinaryOp::Mul => ("*", PREC_MUL, PREC_MUL + 1),
                BinaryOp::Div => ("/", PREC_MUL, PREC_MUL + 1),
                // right-associative: parenthesize a nested power on the left
                BinaryOp::Pow => ("^", PREC_POW + 1, PREC_UNARY),
            };
            write_prec(a, left_min, out);
            out.push_str(sym);
            write_prec(b, right_min, out);
        }
    }
    if parens {
        out.push(')');
    }
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_prec(self, 0, &mut s);
        f.write_str(&s)
    }
}

fn checked(node: &'static str, arg: f64, jet: Jet2) -> Result<Jet2, EvalError> {
    if jet.is_finite() {
        Ok(jet)
    } else {
        Err(EvalError::Domain { node, arg, reason: "result not finite" })
    }
}

/// Evaluates the expression and its first two derivatives at `u` by
/// dual-number propagation.
pub fn eval_jet2(ast: &ExprAst, u: f64) -> Result<Jet2, EvalError> {
    match ast {
        ExprAst::Const(c) => Ok(Jet2::constant(*c)),
        ExprAst::Var => Ok(Jet2::variable(u)),
        ExprAst::Unary(f, a) => {
            let ja = eval_jet2(a, u)?;
            let v = ja.value;
            match f {
                UnaryFn::Neg => Ok(-ja),
                UnaryFn::Sin => checked("sin", v, ja.sin()),
                UnaryFn::Cos => checked("cos", v, ja.cos()),
                UnaryFn::Exp => checked("exp", v, ja.exp()),
                UnaryFn::Ln => {
                    if v <= 0.0 {
                        return Err(EvalError::Domain {
                            node: "ln",
                            arg: v,
                            reason: "argument must be positive",
                        });
                    }
                    checked("ln", v, ja.ln())
                }
                UnaryFn::Sinh => checked("sinh", v, ja.sinh()),
                UnaryFn::Cosh => checked("cosh", v, ja.cosh()),
                UnaryFn::Tanh => checked("tanh", v, ja.tanh()),
                UnaryFn::Sqrt => {
                    if v < 0.0 {
                        return Err(EvalError::Domain {
                            node: "sqrt",
                            arg: v,
                            reason: "argument must be nonnegative",
                        });
                    }
                    checked("sqrt", v, ja.sqrt())
                }
                UnaryFn::Abs => {
                    if v == 0.0 && (ja.d1 != 0.0 || ja.d2 != 0.0) {
                        return Err(EvalError::Domain {
                            node: "abs",
                            arg: v,
                            reason: "not differentiable at 0",
                        });
                    }
                    let out = if v == 0.0 { Jet2::constant(0.0) } else { ja.abs() };
                    checked("abs", v, out)
                }
            }
        }
        ExprAst::Binary(op, a, b) => {
            let ja = eval_jet2(a, u)?;
            match op {
                BinaryOp::Add => Ok(ja + eval_jet2(b, u)?),
                BinaryOp::Sub => Ok(ja - eval_jet2(b, u)?),
                BinaryOp::Mul => checked("*", ja.value, ja * eval_jet2(b, u)?),
                BinaryOp::Div => {
                    let jb = eval_jet2(b, u)?;
                    if jb.value == 0.0 {
                        return Err(EvalError::Domain {
                            node: "/",
                            arg: jb.value,
                            reason: "division by zero",
                        });
                    }
                    checked("/", jb.value, ja / jb)
                }
                BinaryOp::Pow => {
                    if b.is_constant() {
                        // the exponent carries no derivatives; the power
                        // rule keeps negative bases usable for integral
                        // exponents
                        let c = eval_jet2(b, u)?.value;
                        checked("^", ja.value, ja.powf(c))
                    } else {
                        if ja.value <= 0.0 {
                            return Err(EvalError::Domain {
                                node: "^",
                                arg: ja.value,
                                reason: "non-constant exponent needs a positive base",
                            });
                        }
                        let jb = eval_jet2(b, u)?;
                        checked("^", ja.value, (jb * ja.ln()).exp())
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn parses_function_calls() {
        assert_eq!(parse("exp(u)").unwrap(), ExprAst::Unary(UnaryFn::Exp, Box::new(ExprAst::Var)));
    }

    #[test]
    fn precedence_shapes() {
        let ast = parse("u^2 + 3*u").unwrap();
        let expected = ExprAst::Binary(
            BinaryOp::Add,
            Box::new(ExprAst::Binary(
                BinaryOp::Pow,
                Box::new(ExprAst::Var),
                Box::new(ExprAst::Const(2.0)),
            )),
            Box::new(ExprAst::Binary(
                BinaryOp::Mul,
                Box::new(ExprAst::Const(3.0)),
                Box::new(ExprAst::Var),
            )),
        );
        assert_eq!(ast, expected);
    }

    #[test]
    fn power_is_right_associative() {
        let ast = parse("2^3^2").unwrap();
        assert_eq!(eval_jet2(&ast, 0.0).unwrap().value, 512.0);
    }

    #[test]
    fn power_binds_tighter_than_unary_minus() {
        let neg_sq = parse("-2^2").unwrap();
        assert_eq!(eval_jet2(&neg_sq, 0.0).unwrap().value, -4.0);
        let neg_exp = parse("2^-1").unwrap();
        assert_eq!(eval_jet2(&neg_exp, 0.0).unwrap().value, 0.5);
    }

    #[test]
    fn no_implicit_multiplication() {
        let err = parse("3u").unwrap_err();
        match err {
            ParseError::Syntax { offset, .. } => assert_eq!(offset, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn unknown_function_is_reported_by_name() {
        match parse("foo(u)").unwrap_err() {
            ParseError::UnknownFunction { name, offset } => {
                assert_eq!(name, "foo");
                assert_eq!(offset, 0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn dangling_input_is_rejected() {
        assert!(parse("u +").is_err());
        assert!(parse("(u").is_err());
        assert!(parse("").is_err());
        assert!(parse("u) ").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn depth_is_bounded() {
        let deep_ok = format!("{}u{}", "(".repeat(100), ")".repeat(100));
        assert!(parse(&deep_ok).is_ok());
        let too_deep = format!("{}u{}", "(".repeat(200), ")".repeat(200));
        assert!(matches!(parse(&too_deep), Err(ParseError::TooDeep { .. })));
        let minus_chain = format!("{}u", "-".repeat(200));
        assert!(matches!(parse(&minus_chain), Err(ParseError::TooDeep { .. })));
    }

    #[test]
    fn non_ascii_input_is_reported_by_byte() {
        match parse("u + π").unwrap_err() {
            ParseError::Syntax { offset, found, .. } => {
                assert_eq!(offset, 4);
                assert!(found.starts_with("byte 0x"), "{found}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse(" u ^ 2+ 3 * u ").unwrap();
        let b = parse("u^2+3*u").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn eval_examples() {
        let e = parse("exp(u)").unwrap();
        let j = eval_jet2(&e, 1.0).unwrap();
        let euler = std::f64::consts::E;
        assert!(close(j.value, euler, 1e-15));
        assert!(close(j.d1, euler, 1e-15));
        assert!(close(j.d2, euler, 1e-15));

        let c = parse("cos(u)").unwrap();
        let j = eval_jet2(&c, 0.0).unwrap();
        assert_eq!((j.value, j.d1, j.d2), (1.0, 0.0, -1.0));

        let p = parse("u^2 + 3*u").unwrap();
        let j = eval_jet2(&p, 2.0).unwrap();
        assert_eq!((j.value, j.d1, j.d2), (10.0, 7.0, 2.0));
    }

    #[test]
    fn domain_errors_name_the_node() {
        let ln = parse("ln(u)").unwrap();
        match eval_jet2(&ln, -1.0).unwrap_err() {
            EvalError::Domain { node, arg, .. } => {
                assert_eq!(node, "ln");
                assert_eq!(arg, -1.0);
            }
        }
        let div = parse("1/u").unwrap();
        assert!(matches!(
            eval_jet2(&div, 0.0),
            Err(EvalError::Domain { node: "/", .. })
        ));
        let sq = parse("sqrt(u)").unwrap();
        assert!(eval_jet2(&sq, -0.5).is_err());
        let pw = parse("u^u").unwrap();
        assert!(eval_jet2(&pw, -1.0).is_err());
        assert!(eval_jet2(&pw, 2.0).is_ok());
    }

    #[test]
    fn constant_exponent_subtree() {
        // (1+1) contains no variable, so the power rule applies and the
        // negative base stays legal
        let p = parse("u^(1+1)").unwrap();
        let j = eval_jet2(&p, -3.0).unwrap();
        assert_eq!((j.value, j.d1, j.d2), (9.0, -6.0, 2.0));
    }

    #[test]
    fn overflow_is_a_domain_error() {
        let e = parse("exp(exp(u))").unwrap();
        assert!(matches!(
            eval_jet2(&e, 10.0),
            Err(EvalError::Domain { node: "exp", .. })
        ));
    }

    #[test]
    fn print_round_trips() {
        for src in [
            "u^2 + 3*u",
            "2^3^2",
            "-u^2",
            "(-u)^2",
            "(u + 1)*(u - 2)/(u + 3)",
            "sin(cos(u))*exp(-u)",
            "1 - 2 - 3",
            "2^-3",
            "sqrt(u)/tanh(u + 4)",
        ] {
            let ast = parse(src).unwrap();
            let printed = ast.to_string();
            let reparsed = parse(&printed)
                .unwrap_or_else(|e| panic!("{src} printed as {printed}: {e}"));
            assert_eq!(ast, reparsed, "{src} -> {printed}");
        }
    }

    #[test]
    fn linearity_of_evaluation() {
        let f = parse("sinh(u)").unwrap();
        let g = parse("u^3").unwrap();
        let combo = parse("2.5*sinh(u) + 1.5*u^3").unwrap();
        for i in 0..20 {
            let u = -1.5 + 0.17 * i as f64;
            let jf = eval_jet2(&f, u).unwrap();
            let jg = eval_jet2(&g, u).unwrap();
            let jc = eval_jet2(&combo, u).unwrap();
            assert!(close(jc.value, 2.5 * jf.value + 1.5 * jg.value, 1e-12));
            assert!(close(jc.d1, 2.5 * jf.d1 + 1.5 * jg.d1, 1e-12));
            assert!(close(jc.d2, 2.5 * jf.d2 + 1.5 * jg.d2, 1e-12));
        }
    }
}
