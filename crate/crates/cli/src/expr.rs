//! Concrete syntax for polynomial weights.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := rational | var | '(' expr ')'
//! ```
//!
//! Variables are `x1..xd` and the height symbol `n`. A leading minus is
//! accepted on the first term of any expression.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use wehrhart::{LinForm, Rat, WeightPoly, WeightTerm};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    /// `x_k`, 1-based.
    X(usize),
    /// The height `n` of the dilate.
    N,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Parsed weight. `Sum` has at least two summands or a single negated one;
/// `Product` has at least two factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightExpr {
    Num(Rat),
    Var(Var),
    Sum(Vec<(Sign, WeightExpr)>),
    Product(Vec<WeightExpr>),
    Pow(Box<WeightExpr>, u32),
}

pub fn parse_weight(s: &str, d: usize) -> Result<WeightExpr, CliError> {
    let mut p = Parser {
        chars: s.chars().collect(),
        pos: 0,
        d,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    d: usize,
}

impl Parser {
    fn error(&self, message: String) -> CliError {
        CliError::Syntax {
            position: self.pos,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn expr(&mut self) -> Result<WeightExpr, CliError> {
        let mut terms = Vec::new();
        let first = if self.eat('-') { Sign::Minus } else { Sign::Plus };
        terms.push((first, self.term()?));
        loop {
            let sign = if self.eat('+') {
                Sign::Plus
            } else if self.eat('-') {
                Sign::Minus
            } else {
                break;
            };
            terms.push((sign, self.term()?));
        }
        if terms.len() == 1 && terms[0].0 == Sign::Plus {
            return Ok(terms.pop().unwrap().1);
        }
        Ok(WeightExpr::Sum(terms))
    }

    fn term(&mut self) -> Result<WeightExpr, CliError> {
        let mut factors = vec![self.factor()?];
        while self.eat('*') {
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().unwrap());
        }
        Ok(WeightExpr::Product(factors))
    }

    fn factor(&mut self) -> Result<WeightExpr, CliError> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let at = self.pos;
        let e = self
            .digits()
            .ok_or_else(|| self.error("expected a nonnegative integer exponent".into()))?;
        let e = e.parse::<u32>().map_err(|_| CliError::Syntax {
            position: at,
            message: format!("exponent {e} is too large"),
        })?;
        Ok(WeightExpr::Pow(Box::new(base), e))
    }

    fn base(&mut self) -> Result<WeightExpr, CliError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'".into()));
                }
                Ok(e)
            }
            Some('n') => {
                self.pos += 1;
                Ok(WeightExpr::Var(Var::N))
            }
            Some('x') => {
                let at = self.pos;
                self.pos += 1;
                let k = self
                    .digits()
                    .ok_or_else(|| self.error("expected a variable index after 'x'".into()))?;
                match k.parse::<usize>() {
                    Ok(k) if (1..=self.d).contains(&k) => Ok(WeightExpr::Var(Var::X(k))),
                    _ => Err(CliError::VariableOutOfRange {
                        position: at,
                        name: format!("x{k}"),
                        dim: self.d,
                    }),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().unwrap().parse().unwrap();
                if !self.eat('/') {
                    return Ok(WeightExpr::Num(Rat::from_integer(num)));
                }
                self.skip_ws();
                let den: BigInt = self
                    .digits()
                    .ok_or_else(|| self.error("expected a denominator".into()))?
                    .parse()
                    .unwrap();
                if den.is_zero() {
                    return Err(self.error("zero denominator".into()));
                }
                Ok(WeightExpr::Num(Rat::new(num, den)))
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(k) => write!(f, "x{k}"),
            Var::N => write!(f, "n"),
        }
    }
}

impl WeightExpr {
    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Prints text that parses back to the same tree.
impl fmt::Display for WeightExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightExpr::Num(c) => write!(f, "{c}"),
            WeightExpr::Var(v) => write!(f, "{v}"),
            WeightExpr::Sum(terms) => {
                for (i, (sign, t)) in terms.iter().enumerate() {
                    match (i, sign) {
                        (0, Sign::Plus) => {}
                        (0, Sign::Minus) => write!(f, "-")?,
                        (_, Sign::Plus) => write!(f, " + ")?,
                        (_, Sign::Minus) => write!(f, " - ")?,
                    }
                    t.fmt_child(f, matches!(t, WeightExpr::Sum(_)))?;
                }
                Ok(())
            }
            WeightExpr::Product(factors) => {
                for (i, x) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    x.fmt_child(f, matches!(x, WeightExpr::Sum(_) | WeightExpr::Product(_)))?;
                }
                Ok(())
            }
            WeightExpr::Pow(base, e) => {
                base.fmt_child(f, !matches!(**base, WeightExpr::Num(_) | WeightExpr::Var(_)))?;
                write!(f, "^{e}")
            }
        }
    }
}

/// Sum of products of linear forms, `(scalar, factors)`.
type Sop = Vec<(Rat, Vec<LinForm>)>;

impl WeightExpr {
    /// Value at `(x_1, …, x_d, n)`.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        match self {
            WeightExpr::Num(c) => c.clone(),
            WeightExpr::Var(Var::X(k)) => point[k - 1].clone(),
            WeightExpr::Var(Var::N) => point[point.len() - 1].clone(),
            WeightExpr::Sum(terms) => terms
                .iter()
                .map(|(s, t)| match s {
                    Sign::Plus => t.eval(point),
                    Sign::Minus => -t.eval(point),
                })
                .sum(),
            WeightExpr::Product(factors) => factors.iter().map(|x| x.eval(point)).product(),
            WeightExpr::Pow(base, e) => {
                let b = base.eval(point);
                (0..*e).fold(Rat::one(), |acc, _| acc * &b)
            }
        }
    }

    /// Expands into a sum of products of linear forms on `R^{d+1}`. Linear
    /// parts of a sum are merged into one form, so a factored weight such as
    /// `(2*x1 - x2)^2` stays a product of two forms.
    pub fn to_weight_poly(&self, d: usize) -> WeightPoly {
        let terms = self
            .sop(d)
            .into_iter()
            .map(|(c, factors)| WeightTerm::new(c, factors))
            .collect();
        WeightPoly::new(d, terms)
    }

    fn sop(&self, d: usize) -> Sop {
        match self {
            WeightExpr::Num(c) => tidy(d, vec![(c.clone(), Vec::new())]),
            WeightExpr::Var(v) => {
                let k = match v {
                    Var::X(k) => k - 1,
                    Var::N => d,
                };
                vec![(Rat::one(), vec![LinForm::coordinate(d, k)])]
            }
            WeightExpr::Sum(terms) => {
                let mut out = Sop::new();
                for (sign, t) in terms {
                    for (c, factors) in t.sop(d) {
                        out.push((if *sign == Sign::Minus { -c } else { c }, factors));
                    }
                }
                tidy(d, out)
            }
            WeightExpr::Product(factors) => factors
                .iter()
                .fold(vec![(Rat::one(), Vec::new())], |acc, x| multiply(d, &acc, &x.sop(d))),
            WeightExpr::Pow(base, e) => {
                let b = base.sop(d);
                (0..*e).fold(vec![(Rat::one(), Vec::new())], |acc, _| multiply(d, &acc, &b))
            }
        }
    }
}

fn multiply(d: usize, a: &Sop, b: &Sop) -> Sop {
    let mut out = Sop::new();
    for (ca, fa) in a {
        for (cb, fb) in b {
            out.push((ca * cb, fa.iter().chain(fb).cloned().collect()));
        }
    }
    tidy(d, out)
}

/// Merges constants and single linear forms; drops zero terms.
fn tidy(d: usize, terms: Sop) -> Sop {
    let mut constant = Rat::zero();
    let mut linear = LinForm::zero(d);
    let mut out = Sop::new();
    for (c, factors) in terms {
        if c.is_zero() || factors.iter().any(LinForm::is_zero) {
            continue;
        }
        match factors.len() {
            0 => constant += c,
            1 => linear = linear.add(&factors[0].scale(&c)),
            _ => out.push((c, factors)),
        }
    }
    if !linear.is_zero() {
        out.insert(0, (Rat::one(), vec![linear]));
    }
    if !constant.is_zero() {
        out.push((constant, Vec::new()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: usize) -> WeightExpr {
        WeightExpr::Var(Var::X(k))
    }

    #[test]
    fn precedence() {
        let e = parse_weight("x1 + x2 * x3^2", 3).unwrap();
        let expected = WeightExpr::Sum(vec![
            (Sign::Plus, x(1)),
            (
                Sign::Plus,
                WeightExpr::Product(vec![x(2), WeightExpr::Pow(Box::new(x(3)), 2)]),
            ),
        ]);
        assert_eq!(e, expected);
    }

    #[test]
    fn rational_literals_and_whitespace() {
        let e = parse_weight(" 3 / 4 * n ", 1).unwrap();
        let expected = WeightExpr::Product(vec![
            WeightExpr::Num(Rat::new(3.into(), 4.into())),
            WeightExpr::Var(Var::N),
        ]);
        assert_eq!(e, expected);
        assert!(parse_weight("1/0", 1).is_err());
    }

    #[test]
    fn factored_weight_keeps_its_factors() {
        let w = parse_weight("(2*x1 - x2)^2 * (2*x2 - x1)^2", 2).unwrap().to_weight_poly(2);
        assert_eq!(w.terms.len(), 1);
        assert_eq!(w.terms[0].factors.len(), 4);
        assert_eq!(w.max_degree(), 4);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_weight("x1 + * x2", 2) {
            Err(CliError::Syntax { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
        match parse_weight("x1 + x3", 2) {
            Err(CliError::VariableOutOfRange { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_weight("x0", 2).is_err());
        assert!(parse_weight("(x1", 2).is_err());
        assert!(parse_weight("x1 x2", 2).is_err());
        assert!(parse_weight("", 2).is_err());
    }
}
