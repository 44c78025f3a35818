//! A small expression language for polytope constructions.
//!
//! ```text
//! expr  := atom | func "(" args ")"
//! atom  := point | interval | square | prism3
//! func  := simplex(d) | cross(d) | join(e, ...) | sum(e, ...) | pyr(e [, t])
//!        | bipyr(e) | stack(e, t) | P(n [; j,k, ...]) | Pnm(n, m)
//! ```
//!
//! Whitespace is ignored. `P(n, j,k, ...)` is accepted as well as the `;` form.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::polytope::{
    bipyramid, canonical_p, cross, direct_sum, join, pnm, prism3, pyramid, simplex, square, stack,
    CombinatorialPolytope, PolytopeError,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Point,
    Interval,
    Square,
    Prism3,
    Simplex(usize),
    Cross(usize),
    Join(Vec<Expr>),
    Sum(Vec<Expr>),
    Pyr(Box<Expr>, usize),
    Bipyr(Box<Expr>),
    Stack(Box<Expr>, usize),
    Canonical { n: usize, pairs: Vec<(usize, usize)> },
    Pnm(usize, usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at position {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl Expr {
    pub fn eval(&self) -> Result<CombinatorialPolytope, PolytopeError> {
        match self {
            Expr::Point => simplex(0),
            Expr::Interval => simplex(1),
            Expr::Square => Ok(square()),
            Expr::Prism3 => Ok(prism3()),
            Expr::Simplex(d) => simplex(*d),
            Expr::Cross(d) => cross(*d),
            Expr::Join(args) => fold(args, join),
            Expr::Sum(args) => fold(args, direct_sum),
            Expr::Pyr(e, t) => pyramid(&e.eval()?, *t),
            Expr::Bipyr(e) => bipyramid(&e.eval()?),
            Expr::Stack(e, t) => stack(&e.eval()?, *t),
            Expr::Canonical { n, pairs } => canonical_p(*n, pairs),
            Expr::Pnm(n, m) => pnm(*n, *m),
        }
    }
}

fn fold(
    args: &[Expr],
    op: fn(&CombinatorialPolytope, &CombinatorialPolytope) -> Result<CombinatorialPolytope, PolytopeError>,
) -> Result<CombinatorialPolytope, PolytopeError> {
    let mut acc = args[0].eval()?;
    for e in &args[1..] {
        acc = op(&acc, &e.eval()?)?;
    }
    Ok(acc)
}

fn write_list(f: &mut fmt::Formatter<'_>, name: &str, args: &[Expr]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{a}")?;
    }
    write!(f, ")")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Point => write!(f, "point"),
            Expr::Interval => write!(f, "interval"),
            Expr::Square => write!(f, "square"),
            Expr::Prism3 => write!(f, "prism3"),
            Expr::Simplex(d) => write!(f, "simplex({d})"),
            Expr::Cross(d) => write!(f, "cross({d})"),
            Expr::Join(args) => write_list(f, "join", args),
            Expr::Sum(args) => write_list(f, "sum", args),
            Expr::Pyr(e, t) => write!(f, "pyr({e},{t})"),
            Expr::Bipyr(e) => write!(f, "bipyr({e})"),
            Expr::Stack(e, t) => write!(f, "stack({e},{t})"),
            Expr::Canonical { n, pairs } => {
                write!(f, "P({n}")?;
                for (i, (j, k)) in pairs.iter().enumerate() {
                    write!(f, "{}{j},{k}", if i == 0 { ";" } else { "," })?;
                }
                write!(f, ")")
            }
            Expr::Pnm(n, m) => write!(f, "Pnm({n},{m})"),
        }
    }
}

impl FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<&str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !c.is_ascii_alphanumeric() && c != '_' {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a name"));
        }
        Ok(&self.text[start..self.pos])
    }

    fn int(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        self.text[start..self.pos].parse().map_err(|_| ParseError {
            pos: start,
            message: "integer out of range".into(),
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident()?.to_string();
        let atom = match name.as_str() {
            "point" => Some(Expr::Point),
            "interval" => Some(Expr::Interval),
            "square" => Some(Expr::Square),
            "prism3" => Some(Expr::Prism3),
            _ => None,
        };
        if let Some(a) = atom {
            return Ok(a);
        }
        let known = ["simplex", "cross", "join", "sum", "pyr", "bipyr", "stack", "P", "Pnm"];
        if !known.contains(&name.as_str()) {
            return Err(ParseError {
                pos: start,
                message: format!("unknown construction `{name}`"),
            });
        }
        self.expect('(')?;
        let e = match name.as_str() {
            "simplex" => Expr::Simplex(self.int()?),
            "cross" => {
                let at = self.pos;
                let d = self.int()?;
                if d == 0 {
                    return Err(ParseError {
                        pos: at,
                        message: "cross(d) needs d ≥ 1".into(),
                    });
                }
                Expr::Cross(d)
            }
            "join" | "sum" => {
                let mut args = vec![self.expr()?];
                while self.eat(',') {
                    args.push(self.expr()?);
                }
                if name == "join" {
                    Expr::Join(args)
                } else {
                    Expr::Sum(args)
                }
            }
            "pyr" => {
                let e = self.expr()?;
                let t = if self.eat(',') { self.int()? } else { 1 };
                Expr::Pyr(Box::new(e), t)
            }
            "bipyr" => Expr::Bipyr(Box::new(self.expr()?)),
            "stack" => {
                let e = self.expr()?;
                self.expect(',')?;
                Expr::Stack(Box::new(e), self.int()?)
            }
            "Pnm" => {
                let n = self.int()?;
                self.expect(',')?;
                Expr::Pnm(n, self.int()?)
            }
            "P" => self.canonical()?,
            _ => unreachable!("checked against the known names"),
        };
        self.expect(')')?;
        Ok(e)
    }

    fn canonical(&mut self) -> Result<Expr, ParseError> {
        let n = self.int()?;
        let mut values = Vec::new();
        if self.eat(';') || self.eat(',') {
            values.push((self.pos, self.int()?));
            while self.eat(',') {
                values.push((self.pos, self.int()?));
            }
        }
        if values.len() % 2 == 1 {
            return Err(self.error("P(n; j,k, ...) needs an even number of sum parameters"));
        }
        if let Some(&(pos, _)) = values.iter().find(|(_, v)| *v == 0) {
            return Err(ParseError {
                pos,
                message: "sum parameters must be at least 1".into(),
            });
        }
        let pairs = values.chunks(2).map(|c| (c[0].1, c[1].1)).collect();
        Ok(Expr::Canonical { n, pairs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let e = parse("pyr(square,3)").unwrap();
        assert_eq!(e, Expr::Pyr(Box::new(Expr::Square), 3));
        // same polytope up to labels: the square comes first here
        let relabeled = e.eval().unwrap().relabeled(&[3, 4, 5, 6, 0, 1, 2]).unwrap();
        assert_eq!(relabeled, canonical_p(3, &[(1, 1)]).unwrap());
        let p = parse(" join( simplex(2), square ,square ) ").unwrap().eval().unwrap();
        assert_eq!((p.dim(), p.n_vertices()), (8, 11));
        assert_eq!(
            parse("P(1; 1,1, 1,1)").unwrap().eval().unwrap(),
            parse("Pnm(1,2)").unwrap().eval().unwrap()
        );
        assert_eq!(parse("P(1, 1,1, 1,1)").unwrap(), parse("P(1;1,1,1,1)").unwrap());
        assert_eq!(parse("P(4)").unwrap().eval().unwrap(), simplex(3).unwrap());
        assert_eq!(parse("pyr(square)").unwrap(), parse("pyr(square,1)").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("join(square,").unwrap_err();
        assert_eq!(e.pos, 12);
        let e = parse("frob(1)").unwrap_err();
        assert_eq!(e.pos, 0);
        assert!(e.message.contains("frob"));
        assert_eq!(parse("square x").unwrap_err().pos, 7);
        assert_eq!(parse("cross(0)").unwrap_err().pos, 6);
        assert!(parse("P(2; 1)").is_err());
        assert_eq!(parse("P(2; 1,0)").unwrap_err().pos, 7);
        assert!(parse("simplex(99999999999999999999999)").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn eval_errors() {
        assert!(parse("sum(point,square)").unwrap().eval().is_err());
        assert!(parse("stack(cross(3),1)").unwrap().eval().is_ok());
        assert!(parse("stack(square,1)").unwrap().eval().is_ok());
        assert!(parse("P(0)").unwrap().eval().is_err());
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            Just(Expr::Point),
            Just(Expr::Interval),
            Just(Expr::Square),
            Just(Expr::Prism3),
            (0usize..6).prop_map(Expr::Simplex),
            (1usize..5).prop_map(Expr::Cross),
            ((0usize..4), (0usize..3)).prop_map(|(n, m)| Expr::Pnm(n, m)),
            ((0usize..4), prop::collection::vec((1usize..3, 1usize..3), 0..3))
                .prop_map(|(n, pairs)| Expr::Canonical { n, pairs }),
        ];
        leaf.prop_recursive(3, 16, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 1..4).prop_map(Expr::Join),
                prop::collection::vec(inner.clone(), 1..4).prop_map(Expr::Sum),
                (inner.clone(), 0usize..4).prop_map(|(e, t)| Expr::Pyr(Box::new(e), t)),
                inner.clone().prop_map(|e| Expr::Bipyr(Box::new(e))),
                (inner, 0usize..3).prop_map(|(e, t)| Expr::Stack(Box::new(e), t)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(e in arb_expr()) {
            let text = e.to_string();
            prop_assert_eq!(parse(&text).unwrap(), e);
        }

        #[test]
        fn eval_is_deterministic(e in arb_expr()) {
            let a = e.eval();
            let b = e.eval();
            prop_assert_eq!(a, b);
        }
    }
}
