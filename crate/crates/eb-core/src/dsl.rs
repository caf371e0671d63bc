//! Ring expression language: `Z/n`, `GF(q)`, `GF(p,k)`, `bool(k)`,
//! polynomial quotients `R[x]/(f)`, and whitespace-delimited products
//! `R x S`. Parsing is positioned, printing is canonical, and
//! `parse(pretty(e)) == e` for every expression.

use crate::error::{Error, Result};
use crate::ring::{
    make_bool_capped, make_gf_capped, make_quotient_poly_capped, make_zmod_capped, prime_power,
    ring_product_capped, FiniteRing, BOOL_MAX_EXPONENT,
};
use crate::semigroup::{ElementId, DEFAULT_ORDER_CAP};

/// Abstract ring expression. Products associate to the left; polynomial
/// coefficients are integers stored by ascending degree with a nonzero
/// leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingExpr {
    ZMod(u64),
    GF { p: u64, k: u32 },
    Bool(u32),
    PolyQuot(Box<RingExpr>, Vec<i64>),
    Product(Box<RingExpr>, Box<RingExpr>),
}

/// Positioned parse failure; `offset` is a byte index into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
    pub found: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "at byte {}: expected {}, found {}",
            self.offset, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::input(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokKind {
    Ident(String),
    Nat(u64),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Tok {
    kind: TokKind,
    offset: usize,
    space_before: bool,
}

impl Tok {
    fn describe(&self) -> String {
        match &self.kind {
            TokKind::Ident(s) => format!("{s:?}"),
            TokKind::Nat(n) => format!("{n:?}"),
            TokKind::Sym(c) => format!("{c:?}"),
        }
    }
}

fn lex(input: &str) -> std::result::Result<Vec<Tok>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    let mut space = false;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            space = true;
            i += 1;
            continue;
        }
        let offset = i;
        let kind = if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_alphabetic() {
                i += 1;
            }
            TokKind::Ident(input[start..i].to_string())
        } else if c.is_ascii_digit() {
            let mut n: u64 = 0;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add((bytes[i] - b'0') as u64))
                    .ok_or_else(|| ParseError {
                        offset,
                        expected: "a number below 2^64".into(),
                        found: "a larger literal".into(),
                    })?;
                i += 1;
            }
            TokKind::Nat(n)
        } else if "/()[],+-*^".contains(c) {
            i += 1;
            TokKind::Sym(c)
        } else {
            return Err(ParseError {
                offset,
                expected: "a ring expression token".into(),
                found: format!("{c:?}"),
            });
        };
        toks.push(Tok {
            kind,
            offset,
            space_before: space,
        });
        space = false;
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    len: usize,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err<T>(&self, expected: impl Into<String>) -> PResult<T> {
        let (offset, found) = match self.peek() {
            Some(t) => (t.offset, t.describe()),
            None => (self.len, "end of input".into()),
        };
        Err(ParseError {
            offset,
            expected: expected.into(),
            found,
        })
    }

    fn err_at<T>(&self, offset: usize, expected: impl Into<String>, found: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            offset,
            expected: expected.into(),
            found: found.into(),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        t
    }

    fn eat_sym(&mut self, c: char) -> PResult<Tok> {
        match self.peek() {
            Some(t) if t.kind == TokKind::Sym(c) => Ok(self.bump()),
            _ => self.err(format!("{c:?}")),
        }
    }

    fn eat_nat(&mut self, what: &str) -> PResult<(u64, usize)> {
        match self.peek() {
            Some(t) => {
                if let TokKind::Nat(n) = t.kind {
                    let offset = t.offset;
                    self.bump();
                    Ok((n, offset))
                } else {
                    self.err(what)
                }
            }
            None => self.err(what),
        }
    }

    fn eat_positive(&mut self, what: &str) -> PResult<(u64, usize)> {
        let (n, offset) = self.eat_nat(what)?;
        if n == 0 {
            return self.err_at(offset, what, "0".to_string());
        }
        Ok((n, offset))
    }

    fn expr(&mut self) -> PResult<RingExpr> {
        let mut acc = self.term()?;
        loop {
            // The product operator is a lone `x` with whitespace on both
            // sides, which keeps it distinct from the polynomial variable.
            let is_product = matches!(
                self.peek(),
                Some(t) if t.kind == TokKind::Ident("x".into()) && t.space_before
            ) && matches!(
                self.toks.get(self.pos + 1),
                Some(n) if n.space_before
            );
            if !is_product {
                break;
            }
            self.bump();
            let rhs = self.term()?;
            acc = RingExpr::Product(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn term(&mut self) -> PResult<RingExpr> {
        let head = match self.peek().map(|t| t.kind.clone()) {
            Some(TokKind::Ident(w)) if w == "Z" => {
                self.bump();
                self.eat_sym('/')?;
                let (n, _) = self.eat_positive("a positive modulus")?;
                RingExpr::ZMod(n)
            }
            Some(TokKind::Ident(w)) if w == "GF" => {
                self.bump();
                self.eat_sym('(')?;
                let (first, first_at) = self.eat_positive("a prime power")?;
                let expr = if self.peek().map(|t| &t.kind) == Some(&TokKind::Sym(',')) {
                    self.bump();
                    let (k, k_at) = self.eat_positive("a positive extension degree")?;
                    if prime_power(first) != Some((first, 1)) {
                        return self.err_at(first_at, "a prime", first.to_string());
                    }
                    let k = u32::try_from(k)
                        .map_err(|_| ParseError {
                            offset: k_at,
                            expected: "an extension degree below 2^32".into(),
                            found: k.to_string(),
                        })?;
                    RingExpr::GF { p: first, k }
                } else {
                    let Some((p, k)) = prime_power(first) else {
                        return self.err_at(first_at, "a prime power", first.to_string());
                    };
                    RingExpr::GF { p, k }
                };
                self.eat_sym(')')?;
                expr
            }
            Some(TokKind::Ident(w)) if w == "bool" => {
                self.bump();
                self.eat_sym('(')?;
                let (k, k_at) = self.eat_positive("a positive exponent")?;
                self.eat_sym(')')?;
                let k = u32::try_from(k).map_err(|_| ParseError {
                    offset: k_at,
                    expected: "an exponent below 2^32".into(),
                    found: k.to_string(),
                })?;
                RingExpr::Bool(k)
            }
            Some(TokKind::Sym('(')) => {
                self.bump();
                let inner = self.expr()?;
                self.eat_sym(')')?;
                inner
            }
            _ => return self.err("a ring expression"),
        };
        self.suffixes(head)
    }

    fn suffixes(&mut self, mut base: RingExpr) -> PResult<RingExpr> {
        while self.peek().map(|t| &t.kind) == Some(&TokKind::Sym('[')) {
            self.bump();
            match self.peek().map(|t| t.kind.clone()) {
                Some(TokKind::Ident(w)) if w == "x" => self.bump(),
                _ => return self.err("the polynomial variable \"x\""),
            };
            self.eat_sym(']')?;
            self.eat_sym('/')?;
            self.eat_sym('(')?;
            let poly = self.poly()?;
            self.eat_sym(')')?;
            base = RingExpr::PolyQuot(Box::new(base), poly);
        }
        Ok(base)
    }

    fn poly(&mut self) -> PResult<Vec<i64>> {
        let start = match self.peek() {
            Some(t) => t.offset,
            None => self.len,
        };
        let mut coeffs: Vec<i64> = Vec::new();
        let mut first = true;
        loop {
            let negative = match self.peek().map(|t| &t.kind) {
                Some(TokKind::Sym('+')) if !first => {
                    self.bump();
                    false
                }
                Some(TokKind::Sym('-')) => {
                    self.bump();
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let (coeff, degree) = self.poly_term()?;
            let signed = if negative {
                coeff.checked_neg()
            } else {
                Some(coeff)
            }
            .ok_or_else(|| ParseError {
                offset: start,
                expected: "a coefficient that fits in i64".into(),
                found: "overflow".into(),
            })?;
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, 0);
            }
            coeffs[degree] = coeffs[degree].checked_add(signed).ok_or_else(|| ParseError {
                offset: start,
                expected: "a coefficient that fits in i64".into(),
                found: "overflow".into(),
            })?;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return self.err_at(start, "a polynomial of degree at least 1", "a constant".to_string());
        }
        Ok(coeffs)
    }

    /// One additive term: `c`, `c*x^d`, `cx^d`, `x^d`, `x`, `c*x`, `cx`.
    fn poly_term(&mut self) -> PResult<(i64, usize)> {
        let mut star = false;
        let coeff = match self.peek().map(|t| t.kind.clone()) {
            Some(TokKind::Nat(n)) => {
                let at = self.bump().offset;
                let c = i64::try_from(n).map_err(|_| ParseError {
                    offset: at,
                    expected: "a coefficient that fits in i64".into(),
                    found: n.to_string(),
                })?;
                if self.peek().map(|t| &t.kind) == Some(&TokKind::Sym('*')) {
                    self.bump();
                    star = true;
                }
                Some(c)
            }
            _ => None,
        };
        let has_var = match self.peek().map(|t| t.kind.clone()) {
            Some(TokKind::Ident(w)) if w == "x" => {
                self.bump();
                true
            }
            _ => {
                if star {
                    return self.err("the polynomial variable \"x\"");
                }
                if coeff.is_none() {
                    return self.err("a polynomial term");
                }
                false
            }
        };
        let degree = if has_var {
            if self.peek().map(|t| &t.kind) == Some(&TokKind::Sym('^')) {
                self.bump();
                let (d, d_at) = self.eat_nat("an exponent")?;
                usize::try_from(d).ok().filter(|&d| d <= 64).ok_or_else(|| ParseError {
                    offset: d_at,
                    expected: "an exponent of at most 64".into(),
                    found: d.to_string(),
                })?
            } else {
                1
            }
        } else {
            0
        };
        Ok((coeff.unwrap_or(1), degree))
    }
}

/// Parse a ring expression, consuming the whole input.
pub fn parse(input: &str) -> std::result::Result<RingExpr, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        len: input.len(),
    };
    let expr = p.expr()?;
    if p.peek().is_some() {
        return p.err("end of input");
    }
    Ok(expr)
}

fn pretty_poly(coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push(if c < 0 { '-' } else { '+' });
        }
        let m = c.unsigned_abs();
        match deg {
            0 => out.push_str(&m.to_string()),
            1 if m == 1 => out.push('x'),
            1 => out.push_str(&format!("{m}*x")),
            _ if m == 1 => out.push_str(&format!("x^{deg}")),
            _ => out.push_str(&format!("{m}*x^{deg}")),
        }
    }
    out
}

/// Canonical rendering: `GF` in single-argument form whenever the order fits
/// in a `u64`, flat left-associated products, parentheses only where the
/// grammar needs them.
pub fn pretty(expr: &RingExpr) -> String {
    match expr {
        RingExpr::ZMod(n) => format!("Z/{n}"),
        RingExpr::GF { p, k } => match (*p as u128).checked_pow(*k).filter(|&q| q <= u64::MAX as u128) {
            Some(q) => format!("GF({q})"),
            None => format!("GF({p},{k})"),
        },
        RingExpr::Bool(k) => format!("bool({k})"),
        RingExpr::PolyQuot(base, coeffs) => {
            let b = match **base {
                RingExpr::Product(..) => format!("({})", pretty(base)),
                _ => pretty(base),
            };
            format!("{b}[x]/({})", pretty_poly(coeffs))
        }
        RingExpr::Product(a, b) => {
            let rhs = match **b {
                RingExpr::Product(..) => format!("({})", pretty(b)),
                _ => pretty(b),
            };
            format!("{} x {rhs}", pretty(a))
        }
    }
}

/// Order of the elaborated ring, without building it. `None` on overflow.
pub fn symbolic_order(expr: &RingExpr) -> Option<u128> {
    match expr {
        RingExpr::ZMod(n) => Some(*n as u128),
        RingExpr::GF { p, k } => (*p as u128).checked_pow(*k),
        RingExpr::Bool(k) => 1u128.checked_shl(*k),
        RingExpr::PolyQuot(base, coeffs) => {
            symbolic_order(base)?.checked_pow((coeffs.len() - 1) as u32)
        }
        RingExpr::Product(a, b) => symbolic_order(a)?.checked_mul(symbolic_order(b)?),
    }
}

/// Build the ring an expression denotes, refusing anything whose order
/// exceeds `cap` before any table is allocated.
pub fn elaborate(expr: &RingExpr, cap: usize) -> Result<FiniteRing> {
    let cap = cap.min(DEFAULT_ORDER_CAP);
    let order = symbolic_order(expr)
        .ok_or_else(|| Error::resource(format!("order of {} overflows", pretty(expr))))?;
    if order > cap as u128 {
        return Err(Error::resource(format!(
            "{} has order {order}, cap is {cap}",
            pretty(expr)
        )));
    }
    build(expr, cap)
}

fn build(expr: &RingExpr, cap: usize) -> Result<FiniteRing> {
    match expr {
        RingExpr::ZMod(n) => make_zmod_capped(*n, cap),
        RingExpr::GF { p, k } => make_gf_capped(*p, *k, cap),
        RingExpr::Bool(k) => {
            if *k > BOOL_MAX_EXPONENT {
                return Err(Error::resource(format!(
                    "bool({k}) exceeds the Boolean exponent cap {BOOL_MAX_EXPONENT}"
                )));
            }
            make_bool_capped(*k, cap)
        }
        RingExpr::PolyQuot(base, coeffs) => {
            let base = build(base, cap)?;
            let embedded: Vec<ElementId> = coeffs
                .iter()
                .map(|&c| {
                    let m = base.int_embed(c.unsigned_abs());
                    if c < 0 {
                        base.neg(m)
                    } else {
                        m
                    }
                })
                .collect();
            let lead = *embedded.last().expect("parsed moduli have a leading term");
            if lead != base.one() {
                return Err(Error::input(format!(
                    "modulus {} is not monic over {} after reducing coefficients",
                    pretty_poly(coeffs),
                    base.label()
                )));
            }
            make_quotient_poly_capped(&base, &embedded, cap)
        }
        RingExpr::Product(a, b) => {
            let a = build(a, cap)?;
            let b = build(b, cap)?;
            ring_product_capped(&a, &b, cap)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zm(n: u64) -> RingExpr {
        RingExpr::ZMod(n)
    }

    #[test]
    fn parses_atoms() {
        assert_eq!(parse("Z/12").unwrap(), zm(12));
        assert_eq!(parse("GF(7)").unwrap(), RingExpr::GF { p: 7, k: 1 });
        assert_eq!(parse("GF(9)").unwrap(), RingExpr::GF { p: 3, k: 2 });
        assert_eq!(parse("GF(3,2)").unwrap(), RingExpr::GF { p: 3, k: 2 });
        assert_eq!(parse("bool(3)").unwrap(), RingExpr::Bool(3));
        assert_eq!(parse("  Z/5  ").unwrap(), zm(5));
    }

    #[test]
    fn products_associate_left_and_need_spaces() {
        let e = parse("Z/2 x Z/3 x Z/5").unwrap();
        assert_eq!(
            e,
            RingExpr::Product(
                Box::new(RingExpr::Product(Box::new(zm(2)), Box::new(zm(3)))),
                Box::new(zm(5))
            )
        );
        let nested = parse("Z/2 x (Z/3 x Z/5)").unwrap();
        assert_eq!(
            nested,
            RingExpr::Product(
                Box::new(zm(2)),
                Box::new(RingExpr::Product(Box::new(zm(3)), Box::new(zm(5))))
            )
        );
        assert!(parse("Z/2 xZ/3").is_err());
        assert!(parse("Z/2x Z/3").is_err());
    }

    #[test]
    fn parses_polynomial_quotients() {
        let e = parse("Z/2[x]/(x^2+x+1)").unwrap();
        assert_eq!(e, RingExpr::PolyQuot(Box::new(zm(2)), vec![1, 1, 1]));
        let e = parse("Z/3[x]/(x^2 - 2*x + 1)").unwrap();
        assert_eq!(e, RingExpr::PolyQuot(Box::new(zm(3)), vec![1, -2, 1]));
        let e = parse("(Z/2 x Z/2)[x]/(x^2)").unwrap();
        assert_eq!(
            e,
            RingExpr::PolyQuot(
                Box::new(RingExpr::Product(Box::new(zm(2)), Box::new(zm(2)))),
                vec![0, 0, 1]
            )
        );
        // Like terms collect; "2x" works without the star.
        assert_eq!(
            parse("Z/5[x]/(x^2+x+x)").unwrap(),
            RingExpr::PolyQuot(Box::new(zm(5)), vec![0, 2, 1])
        );
        assert_eq!(
            parse("Z/5[x]/(2x^2+1)").unwrap(),
            RingExpr::PolyQuot(Box::new(zm(5)), vec![1, 0, 2])
        );
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let e = parse("GF(6)").unwrap_err();
        assert_eq!(e.offset, 3);
        assert_eq!(e.expected, "a prime power");

        let e = parse("GF(6,2)").unwrap_err();
        assert_eq!(e.offset, 3);
        assert_eq!(e.expected, "a prime");

        let e = parse("Z/0").unwrap_err();
        assert_eq!(e.offset, 2);

        let e = parse("Z/4 + Z/2").unwrap_err();
        assert_eq!(e.offset, 4);
        assert_eq!(e.expected, "end of input");

        let e = parse("Z/2[x]/(3)").unwrap_err();
        assert_eq!(e.offset, 8);
        assert!(e.expected.contains("degree at least 1"));

        let e = parse("Z/2[x]/(x^2+x^2-2x^2+x... ").unwrap_err();
        assert!(e.offset > 0);
    }

    #[test]
    fn pretty_is_canonical() {
        assert_eq!(pretty(&parse("Z/6").unwrap()), "Z/6");
        assert_eq!(pretty(&parse("GF(3,2)").unwrap()), "GF(9)");
        assert_eq!(pretty(&parse("GF(2,4)").unwrap()), "GF(16)");
        assert_eq!(pretty(&parse("Z/2 x Z/3 x Z/5").unwrap()), "Z/2 x Z/3 x Z/5");
        assert_eq!(
            pretty(&parse("Z/2 x (Z/3 x Z/5)").unwrap()),
            "Z/2 x (Z/3 x Z/5)"
        );
        assert_eq!(
            pretty(&parse("Z/2[x]/(x^2 + x + 1)").unwrap()),
            "Z/2[x]/(x^2+x+1)"
        );
        assert_eq!(
            pretty(&parse("(Z/2 x Z/2)[x]/(x^3 - x)").unwrap()),
            "(Z/2 x Z/2)[x]/(x^3-x)"
        );
        assert_eq!(pretty(&RingExpr::PolyQuot(Box::new(zm(7)), vec![-1, -2, 1])), "Z/7[x]/(x^2-2*x-1)");
    }

    #[test]
    fn round_trips_fixed_cases() {
        for src in [
            "Z/1",
            "Z/4096",
            "GF(2)",
            "GF(8191)",
            "GF(4)",
            "bool(12)",
            "Z/2 x Z/3",
            "Z/2 x (Z/3 x Z/5) x bool(2)",
            "Z/3[x]/(x^2+1)",
            "Z/2[x]/(x^2+x+1)[x]/(x^2)",
            "(GF(4) x Z/3)[x]/(x^2-x)",
        ] {
            let e = parse(src).unwrap();
            assert_eq!(parse(&pretty(&e)).unwrap(), e, "{src}");
        }
    }

    #[test]
    fn symbolic_orders() {
        assert_eq!(symbolic_order(&parse("Z/12").unwrap()), Some(12));
        assert_eq!(symbolic_order(&parse("GF(9)").unwrap()), Some(9));
        assert_eq!(symbolic_order(&parse("bool(12)").unwrap()), Some(4096));
        assert_eq!(
            symbolic_order(&parse("Z/6[x]/(x^3+1)").unwrap()),
            Some(216)
        );
        assert_eq!(
            symbolic_order(&parse("Z/4 x Z/9 x GF(25)").unwrap()),
            Some(900)
        );
    }

    #[test]
    fn elaborate_builds_and_caps() {
        let r = elaborate(&parse("Z/2 x Z/3").unwrap(), 64).unwrap();
        assert_eq!(r.order(), 6);
        let r = elaborate(&parse("Z/2[x]/(x^2+x+1)").unwrap(), 64).unwrap();
        assert_eq!(r.order(), 4);
        assert_eq!(r.units().len(), 3);

        // 3*x^2 reduces to x^2 over Z/2, still monic.
        let r = elaborate(&parse("Z/2[x]/(3*x^2+1)").unwrap(), 64).unwrap();
        assert_eq!(r.order(), 4);
        // 2*x^2 reduces to zero, so the modulus is no longer monic.
        let e = elaborate(&parse("Z/2[x]/(2*x^2+x+1)").unwrap(), 64).unwrap_err();
        assert!(matches!(e, Error::Input(_)), "{e}");

        let e = elaborate(&parse("Z/100").unwrap(), 64).unwrap_err();
        assert!(matches!(e, Error::Resource(_)));
        let e = elaborate(&parse("Z/2[x]/(x^64+1)").unwrap(), 4096).unwrap_err();
        assert!(matches!(e, Error::Resource(_)));
        let e = elaborate(&parse("bool(13)").unwrap(), 4096).unwrap_err();
        assert!(matches!(e, Error::Resource(_)));
    }

    #[test]
    fn negative_coefficients_embed_correctly() {
        // x^2 - 1 over Z/5 is x^2 + 4.
        let r = elaborate(&parse("Z/5[x]/(x^2-1)").unwrap(), 64).unwrap();
        let s = elaborate(&parse("Z/5[x]/(x^2+4)").unwrap(), 64).unwrap();
        assert_eq!(r.order(), s.order());
        for a in 0..r.order() as u32 {
            for b in 0..r.order() as u32 {
                let (a, b) = (ElementId(a), ElementId(b));
                assert_eq!(r.mul(a, b), s.mul(a, b));
            }
        }
    }
}
