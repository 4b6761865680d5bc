//! Bundle expressions used in scenario files.
//!
//! ```text
//! expr := O(a1,...,ak)[^m]         line bundle, multiplicity m (default 1)
//!       | sum(expr, expr, ...)     Whitney sum
//!       | dual(expr)
//!       | twist(expr, expr)        second argument must have rank 1
//!       | ker(expr -> expr)        kernel of middle -> quotient
//!       | name                     another bundle defined in the same scenario
//! ```

use std::fmt;

use crate::bundle::BundleClass;
use crate::chow::ProductSpace;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BundleExpr {
    Line { degrees: Vec<i64>, multiplicity: i64 },
    Sum(Vec<BundleExpr>),
    Dual(Box<BundleExpr>),
    Twist(Box<BundleExpr>, Box<BundleExpr>),
    Kernel {
        middle: Box<BundleExpr>,
        quotient: Box<BundleExpr>,
    },
    Name(String),
}

impl BundleExpr {
    pub fn parse(input: &str) -> Result<Self> {
        let mut p = Parser { input, pos: 0 };
        let expr = p.expr()?;
        p.skip_ws();
        if p.pos != input.len() {
            return Err(p.error("trailing input"));
        }
        Ok(expr)
    }

    /// Names of other bundles this expression refers to, in order of appearance.
    pub fn references(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_refs(&mut out);
        out
    }

    fn collect_refs<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            BundleExpr::Line { .. } => {}
            BundleExpr::Sum(xs) => xs.iter().for_each(|x| x.collect_refs(out)),
            BundleExpr::Dual(x) => x.collect_refs(out),
            BundleExpr::Twist(a, b) => {
                a.collect_refs(out);
                b.collect_refs(out);
            }
            BundleExpr::Kernel { middle, quotient } => {
                middle.collect_refs(out);
                quotient.collect_refs(out);
            }
            BundleExpr::Name(n) => out.push(n),
        }
    }

    /// Evaluates the expression, looking up names through `resolve`.
    pub fn eval<F>(&self, space: &ProductSpace, resolve: &mut F) -> Result<BundleClass>
    where
        F: FnMut(&str) -> Result<BundleClass>,
    {
        match self {
            BundleExpr::Line {
                degrees,
                multiplicity,
            } => BundleClass::line_bundle(space, degrees, *multiplicity),
            BundleExpr::Sum(xs) => {
                let mut acc = BundleClass::trivial(space, 0);
                for x in xs {
                    acc = acc.direct_sum(&x.eval(space, resolve)?)?;
                }
                Ok(acc)
            }
            BundleExpr::Dual(x) => Ok(x.eval(space, resolve)?.dual()),
            BundleExpr::Twist(x, l) => x.eval(space, resolve)?.twist(&l.eval(space, resolve)?),
            BundleExpr::Kernel { middle, quotient } => BundleClass::kernel_from_sequence(
                &middle.eval(space, resolve)?,
                &quotient.eval(space, resolve)?,
            ),
            BundleExpr::Name(n) => resolve(n),
        }
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleExpr::Line {
                degrees,
                multiplicity,
            } => {
                let ds: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
                write!(f, "O({})^{}", ds.join(","), multiplicity)
            }
            BundleExpr::Sum(xs) => {
                f.write_str("sum(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            BundleExpr::Dual(x) => write!(f, "dual({x})"),
            BundleExpr::Twist(x, l) => write!(f, "twist({x}, {l})"),
            BundleExpr::Kernel { middle, quotient } => write!(f, "ker({middle} -> {quotient})"),
            BundleExpr::Name(n) => f.write_str(n),
        }
    }
}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, reason: &str) -> Error {
        Error::Expr {
            input: self.input.to_string(),
            position: self.pos,
            reason: reason.to_string(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.input.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let end = chars
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        self.pos += end;
        Some(&rest[..end])
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let rest = self.rest();
        let sign = usize::from(rest.starts_with('-') || rest.starts_with('+'));
        let digits = rest[sign..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len() - sign);
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        let text = &rest[..sign + digits];
        let value = text
            .parse()
            .map_err(|_| self.error(&format!("integer {text} out of range")))?;
        self.pos += text.len();
        Ok(value)
    }

    fn peek_open_paren(&mut self) -> bool {
        self.skip_ws();
        self.rest().starts_with('(')
    }

    fn expr(&mut self) -> Result<BundleExpr> {
        let start = self.pos;
        let Some(word) = self.ident() else {
            return Err(self.error("expected a bundle expression"));
        };
        if !self.peek_open_paren() {
            return Ok(BundleExpr::Name(word.to_string()));
        }
        self.expect("(")?;
        let expr = match word {
            "O" => {
                let mut degrees = vec![self.integer()?];
                while self.eat(",") {
                    degrees.push(self.integer()?);
                }
                self.expect(")")?;
                let multiplicity = if self.eat("^") { self.integer()? } else { 1 };
                return Ok(BundleExpr::Line {
                    degrees,
                    multiplicity,
                });
            }
            "sum" => {
                let mut terms = vec![self.expr()?];
                while self.eat(",") {
                    terms.push(self.expr()?);
                }
                if terms.len() < 2 {
                    return Err(self.error("sum needs at least two summands"));
                }
                BundleExpr::Sum(terms)
            }
            "dual" => BundleExpr::Dual(Box::new(self.expr()?)),
            "twist" => {
                let base = self.expr()?;
                self.expect(",")?;
                BundleExpr::Twist(Box::new(base), Box::new(self.expr()?))
            }
            "ker" => {
                let middle = self.expr()?;
                self.expect("->")?;
                BundleExpr::Kernel {
                    middle: Box::new(middle),
                    quotient: Box::new(self.expr()?),
                }
            }
            _ => {
                self.pos = start;
                self.skip_ws();
                return Err(self.error(&format!("unknown constructor `{word}`")));
            }
        };
        self.expect(")")?;
        Ok(expr)
    }
}
