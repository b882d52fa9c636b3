//! Text syntax for polynomials.
//!
//! `3*x^2*y - 1/2*z`: coefficients first, explicit `*`, `^` for powers,
//! parentheses for grouping. Expressions parse without knowing the ring, so
//! a script can be checked before its rings exist; [`PolyExpr::eval`] binds
//! variable names later.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::polynomial::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PolyExpr {
    Number { numer: BigInt, denom: BigInt },
    Var(String),
    /// Signed summands; `true` marks a subtracted term.
    Sum(Vec<(bool, PolyExpr)>),
    Product(Vec<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    pub fn int(n: i64) -> Self {
        PolyExpr::Number { numer: BigInt::from(n), denom: BigInt::one() }
    }

    pub fn eval<K: Field>(&self, field: K, names: &[String]) -> Result<Polynomial<K>> {
        let n = names.len();
        Ok(match self {
            PolyExpr::Number { numer, denom } => {
                let c = field.from_ratio(numer, denom).ok_or_else(|| {
                    Error::Input(format!("denominator {denom} vanishes in {}", field.spec()))
                })?;
                Polynomial::constant(field, n, c)
            }
            PolyExpr::Var(v) => {
                let i = names
                    .iter()
                    .position(|s| s == v)
                    .ok_or_else(|| Error::Input(format!("unknown variable `{v}`")))?;
                Polynomial::variable(field, n, i)
            }
            PolyExpr::Sum(terms) => {
                let mut acc = Polynomial::zero(field, n);
                for (neg, t) in terms {
                    let p = t.eval(field, names)?;
                    acc = if *neg { &acc - &p } else { &acc + &p };
                }
                acc
            }
            PolyExpr::Product(fs) => {
                let mut acc = Polynomial::one(field, n);
                for f in fs {
                    acc = &acc * &f.eval(field, names)?;
                }
                acc
            }
            PolyExpr::Pow(b, e) => b.eval(field, names)?.pow(*e),
        })
    }

    fn is_atom(&self) -> bool {
        match self {
            PolyExpr::Number { denom, .. } => denom.is_one(),
            PolyExpr::Var(_) => true,
            _ => false,
        }
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyExpr::Number { numer, denom } => {
                if denom.is_one() {
                    write!(f, "{numer}")
                } else {
                    write!(f, "{numer}/{denom}")
                }
            }
            PolyExpr::Var(v) => write!(f, "{v}"),
            PolyExpr::Sum(terms) => {
                for (i, (neg, t)) in terms.iter().enumerate() {
                    match (i, neg) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    if matches!(t, PolyExpr::Sum(_)) {
                        write!(f, "({t})")?;
                    } else {
                        write!(f, "{t}")?;
                    }
                }
                Ok(())
            }
            PolyExpr::Product(fs) => {
                for (i, t) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    if matches!(t, PolyExpr::Sum(_) | PolyExpr::Product(_)) {
                        write!(f, "({t})")?;
                    } else {
                        write!(f, "{t}")?;
                    }
                }
                Ok(())
            }
            PolyExpr::Pow(b, e) => {
                if b.is_atom() {
                    write!(f, "{b}^{e}")
                } else {
                    write!(f, "({b})^{e}")
                }
            }
        }
    }
}

/// Parses a complete polynomial expression.
pub fn parse_poly_expr(text: &str) -> Result<PolyExpr> {
    let (expr, used) = parse_poly_prefix(text)?;
    let rest = &text[used..];
    if let Some((off, ch)) = rest.char_indices().find(|(_, c)| !c.is_whitespace()) {
        let (line, column) = line_col(text, used + off);
        return Err(Error::Parse { line, column, message: format!("unexpected `{ch}`") });
    }
    Ok(expr)
}

/// Parses the longest polynomial expression at the start of `text`,
/// returning it and the number of bytes consumed (trailing whitespace is
/// not consumed).
pub fn parse_poly_prefix(text: &str) -> Result<(PolyExpr, usize)> {
    let mut p = ExprParser { src: text, pos: 0 };
    let e = p.sum()?;
    Ok((e, p.pos))
}

pub(crate) fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map(|s| s.chars().count()).unwrap_or(0) + 1;
    (line, column)
}

struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
}

impl ExprParser<'_> {
    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T> {
        let (line, column) = line_col(self.src, at);
        Err(Error::Parse { line, column, message: message.into() })
    }

    fn peek_nonspace(&self) -> Option<(usize, char)> {
        self.src[self.pos..]
            .char_indices()
            .find(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (self.pos + i, c))
    }

    fn sum(&mut self) -> Result<PolyExpr> {
        let mut terms = Vec::new();
        let mut neg = false;
        if let Some((i, c)) = self.peek_nonspace() {
            if c == '-' || c == '+' {
                neg = c == '-';
                self.pos = i + 1;
            }
        }
        let first_signed = neg;
        terms.push((neg, self.product()?));
        loop {
            match self.peek_nonspace() {
                Some((i, c)) if c == '+' || c == '-' => {
                    self.pos = i + 1;
                    terms.push((c == '-', self.product()?));
                }
                _ => break,
            }
        }
        if terms.len() == 1 && !first_signed {
            return Ok(terms.pop().unwrap().1);
        }
        Ok(PolyExpr::Sum(terms))
    }

    fn product(&mut self) -> Result<PolyExpr> {
        let mut factors = vec![self.power()?];
        while let Some((i, '*')) = self.peek_nonspace() {
            self.pos = i + 1;
            factors.push(self.power()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().unwrap());
        }
        Ok(PolyExpr::Product(factors))
    }

    fn power(&mut self) -> Result<PolyExpr> {
        let base = self.atom()?;
        if let Some((i, '^')) = self.peek_nonspace() {
            self.pos = i + 1;
            let (start, digits) = self.digits()?;
            let e = digits
                .parse::<BigInt>()
                .ok()
                .and_then(|b| b.to_u32())
                .ok_or_else(|| Error::Input("exponent too large".into()));
            return match e {
                Ok(e) => Ok(PolyExpr::Pow(Box::new(base), e)),
                Err(_) => self.err(start, "exponent too large"),
            };
        }
        Ok(base)
    }

    fn digits(&mut self) -> Result<(usize, String)> {
        let (start, c) = match self.peek_nonspace() {
            Some(x) => x,
            None => return self.err(self.src.len(), "expected a number, found end of input"),
        };
        if !c.is_ascii_digit() {
            return self.err(start, format!("expected a number, found `{c}`"));
        }
        let len = self.src[start..].chars().take_while(|c| c.is_ascii_digit()).count();
        self.pos = start + len;
        Ok((start, self.src[start..start + len].to_string()))
    }

    fn atom(&mut self) -> Result<PolyExpr> {
        let (start, c) = match self.peek_nonspace() {
            Some(x) => x,
            None => return self.err(self.src.len(), "expected a polynomial, found end of input"),
        };
        if c.is_ascii_digit() {
            let (_, d) = self.digits()?;
            let numer: BigInt = d.parse().expect("digit string");
            let save = self.pos;
            if let Some((i, '/')) = self.peek_nonspace() {
                self.pos = i + 1;
                match self.peek_nonspace() {
                    Some((_, c)) if c.is_ascii_digit() => {
                        let (at, d) = self.digits()?;
                        let denom: BigInt = d.parse().expect("digit string");
                        if denom == BigInt::from(0) {
                            return self.err(at, "division by zero");
                        }
                        return Ok(PolyExpr::Number { numer, denom });
                    }
                    _ => self.pos = save,
                }
            }
            return Ok(PolyExpr::Number { numer, denom: BigInt::one() });
        }
        if c.is_alphabetic() || c == '_' {
            let len: usize = self.src[start..]
                .chars()
                .take_while(|c| c.is_alphanumeric() || *c == '_')
                .map(char::len_utf8)
                .sum();
            self.pos = start + len;
            return Ok(PolyExpr::Var(self.src[start..start + len].to_string()));
        }
        if c == '(' {
            self.pos = start + 1;
            let inner = self.sum()?;
            return match self.peek_nonspace() {
                Some((i, ')')) => {
                    self.pos = i + 1;
                    Ok(inner)
                }
                Some((i, c)) => self.err(i, format!("expected `)`, found `{c}`")),
                None => self.err(self.src.len(), "expected `)`, found end of input"),
            };
        }
        self.err(start, format!("expected a polynomial, found `{c}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    #[test]
    fn parses_canonical_syntax() {
        let e = parse_poly_expr("3*x^2*y - 1/2*z").unwrap();
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let p = e.eval(Rationals, &names).unwrap();
        assert_eq!(p.to_text(&names), "3*x^2*y - 1/2*z");
    }

    #[test]
    fn reports_position_of_bad_token() {
        match parse_poly_expr("x + * y") {
            Err(Error::Parse { line: 1, column: 5, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly_expr("(x + y").is_err());
        assert!(parse_poly_expr("1/0").is_err());
    }

    #[test]
    fn prefix_stops_before_foreign_tokens() {
        let (e, used) = parse_poly_prefix("x*y], [z]").unwrap();
        assert_eq!(used, 3);
        assert_eq!(e.to_string(), "x*y");
    }

    #[test]
    fn vanishing_denominator_is_an_input_error() {
        let e = parse_poly_expr("1/5*x").unwrap();
        let names = vec!["x".to_string()];
        assert!(matches!(e.eval(PrimeField::new(5).unwrap(), &names), Err(Error::Input(_))));
    }

    fn arb_expr() -> impl Strategy<Value = PolyExpr> {
        let leaf = prop_oneof![
            (0i64..20).prop_map(PolyExpr::int),
            (1i64..9, 2i64..9).prop_map(|(n, d)| PolyExpr::Number { numer: n.into(), denom: d.into() }),
            prop_oneof![Just("x"), Just("y"), Just("z")].prop_map(|s| PolyExpr::Var(s.into())),
        ];
        leaf.prop_recursive(3, 16, 3, |inner| {
            prop_oneof![
                prop::collection::vec((any::<bool>(), inner.clone()), 2..4).prop_map(PolyExpr::Sum),
                (inner.clone()).prop_map(|e| PolyExpr::Sum(vec![(true, e)])),
                prop::collection::vec(inner.clone(), 2..4).prop_map(PolyExpr::Product),
                (inner, 1u32..4).prop_map(|(b, e)| PolyExpr::Pow(Box::new(b), e)),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_reparses_to_same_tree(e in arb_expr()) {
            let text = e.to_string();
            prop_assert_eq!(parse_poly_expr(&text).unwrap(), e);
        }
    }
}
