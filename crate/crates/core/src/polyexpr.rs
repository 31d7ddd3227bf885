//! Polynomial notation used by the classification tables.
//!
//! Supports implicit products (`zx^4y`), parametric exponents (`y^{2n+1}`),
//! generic binary forms `F{k}(u, v)`, parenthesised groups, subtraction and
//! coefficients that are either rationals or identifiers naming a generic
//! nonzero value.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};

pub const DEFAULT_VARIABLES: [&str; 4] = ["t", "z", "x", "y"];

/// Integer affine combination of parameters.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Affine {
    pub constant: i64,
    pub coeffs: BTreeMap<String, i64>,
}

impl Affine {
    pub fn constant(c: i64) -> Self {
        Self {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn eval(&self, bindings: &BTreeMap<String, i64>) -> Result<i64> {
        let mut v = self.constant;
        for (p, c) in &self.coeffs {
            let b = bindings
                .get(p)
                .ok_or_else(|| Error::UnboundParameter(p.clone()))?;
            v += c * b;
        }
        Ok(v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Ident(String),
    Rational(Q),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Factor {
    Coefficient(Coefficient),
    Power { var: usize, exponent: Affine },
    Form { degree: Affine, u: Expr, v: Expr },
    Group { inner: Expr, exponent: Affine },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub negated: bool,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Expr {
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialExpr {
    pub variables: Vec<String>,
    pub params: Vec<String>,
    pub body: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CoefficientTag {
    Zero,
    GenericNonzero(String),
    Rational(Q),
}

impl CoefficientTag {
    pub fn rational(v: Q) -> Self {
        if v.is_zero() {
            CoefficientTag::Zero
        } else {
            CoefficientTag::Rational(v)
        }
    }

    pub fn one() -> Self {
        CoefficientTag::Rational(Q::one())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CoefficientTag::Zero)
    }

    /// Generic values absorb everything; explicit rationals add and may cancel.
    pub fn add(&self, other: &Self) -> Self {
        use CoefficientTag::*;
        match (self, other) {
            (Zero, o) | (o, Zero) => o.clone(),
            (GenericNonzero(l), _) | (_, GenericNonzero(l)) => GenericNonzero(l.clone()),
            (Rational(a), Rational(b)) => Self::rational(a + b),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        use CoefficientTag::*;
        match (self, other) {
            (Zero, _) | (_, Zero) => Zero,
            (Rational(a), Rational(b)) => Self::rational(a * b),
            (GenericNonzero(l), Rational(_)) | (Rational(_), GenericNonzero(l)) => {
                GenericNonzero(l.clone())
            }
            (GenericNonzero(a), GenericNonzero(b)) => GenericNonzero(format!("{a}*{b}")),
        }
    }
}

/// Finite support of exponent vectors with a nonzero tag on each.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SupportedPolynomial {
    dim: usize,
    terms: BTreeMap<Vec<u32>, CoefficientTag>,
}

impl SupportedPolynomial {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// Monomials with unit coefficients (duplicates merge by addition).
    pub fn from_monomials<I>(dim: usize, monomials: I) -> Self
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let mut p = Self::new(dim);
        for m in monomials {
            p.add_term(m, CoefficientTag::one());
        }
        p
    }

    pub fn constant(dim: usize, tag: CoefficientTag) -> Self {
        let mut p = Self::new(dim);
        p.add_term(vec![0; dim], tag);
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.terms.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &CoefficientTag)> {
        self.terms.iter()
    }

    pub fn tag(&self, m: &[u32]) -> Option<&CoefficientTag> {
        self.terms.get(m)
    }

    pub fn contains(&self, m: &[u32]) -> bool {
        self.terms.contains_key(m)
    }

    pub fn add_term(&mut self, m: Vec<u32>, tag: CoefficientTag) {
        assert_eq!(m.len(), self.dim, "exponent length");
        let merged = match self.terms.get(&m) {
            Some(old) => old.add(&tag),
            None => tag,
        };
        if merged.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, merged);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, t) in &other.terms {
            out.add_term(m.clone(), t.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::new(self.dim);
        for (m1, t1) in &self.terms {
            for (m2, t2) in &other.terms {
                let m = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, t1.mul(t2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.dim, CoefficientTag::one()), |acc, _| {
            acc.mul(self)
        })
    }

    /// Keeps the terms whose exponent satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&[u32]) -> bool) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, t)| (m.clone(), t.clone()))
                .collect(),
        }
    }

    /// Rewrites every exponent vector; `f` must be injective on the support.
    pub fn map_exponents(&self, mut f: impl FnMut(&[u32]) -> Vec<u32>) -> Self {
        let mut out = Self::new(self.dim);
        for (m, t) in &self.terms {
            out.add_term(f(m), t.clone());
        }
        out
    }

    pub fn same_support(&self, other: &Self) -> bool {
        self.dim == other.dim && self.terms.keys().eq(other.terms.keys())
    }
}

impl fmt::Display for SupportedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim == DEFAULT_VARIABLES.len() {
            f.write_str(&canonical_render(self))
        } else {
            let names: Vec<String> = (1..=self.dim).map(|i| format!("x{i}")).collect();
            f.write_str(&canonical_render_with(self, &names))
        }
    }
}

pub fn parse_expression(text: &str, params: &[&str]) -> Result<PolynomialExpr> {
    let vars: Vec<String> = DEFAULT_VARIABLES.iter().map(|s| s.to_string()).collect();
    parse_expression_with(text, &vars, params)
}

pub fn parse_expression_with(
    text: &str,
    variables: &[String],
    params: &[&str],
) -> Result<PolynomialExpr> {
    let mut seen = std::collections::BTreeSet::new();
    for v in variables {
        if v.is_empty() || !v.starts_with(|c: char| c.is_ascii_alphabetic()) || !seen.insert(v) {
            return Err(Error::Syntax {
                pos: 0,
                msg: format!("invalid or duplicate variable name `{v}`"),
            });
        }
    }
    for p in params {
        let mut cs = p.chars();
        let ok = matches!((cs.next(), cs.next()), (Some(c), None) if c.is_ascii_alphabetic());
        if !ok || variables.iter().any(|v| v == p) {
            return Err(Error::Syntax {
                pos: 0,
                msg: format!("parameter `{p}` must be a single letter distinct from variables"),
            });
        }
    }
    let mut parser = Parser {
        chars: text.char_indices().collect(),
        len: text.len(),
        idx: 0,
        variables,
        params,
    };
    let body = parser.expr()?;
    parser.skip_ws();
    if let Some(c) = parser.peek() {
        return Err(parser.err(format!("unexpected `{c}`")));
    }
    Ok(PolynomialExpr {
        variables: variables.to_vec(),
        params: params.iter().map(|s| s.to_string()).collect(),
        body,
    })
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    len: usize,
    idx: usize,
    variables: &'a [String],
    params: &'a [&'a str],
}

fn is_minus(c: char) -> bool {
    c == '-' || c == '\u{2212}'
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.chars.get(self.idx).map_or(self.len, |&(p, _)| p)
    }

    fn err(&self, msg: String) -> Error {
        Error::Syntax {
            pos: self.pos(),
            msg,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.idx += 1;
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        if self.eat(want) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{want}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut negated = match self.peek() {
            Some('+') => {
                self.idx += 1;
                false
            }
            Some(c) if is_minus(c) => {
                self.idx += 1;
                true
            }
            _ => false,
        };
        loop {
            terms.push(self.term(negated)?);
            self.skip_ws();
            match self.peek() {
                Some('+') => negated = false,
                Some(c) if is_minus(c) => negated = true,
                _ => break,
            }
            self.idx += 1;
        }
        Ok(Expr { terms })
    }

    fn starts_factor(&self) -> bool {
        self.peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '(')
    }

    fn term(&mut self, negated: bool) -> Result<Term> {
        self.skip_ws();
        if !self.starts_factor() {
            return Err(self.err("expected a factor".into()));
        }
        let mut factors = vec![self.factor()?];
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.idx += 1;
                self.skip_ws();
                if !self.starts_factor() {
                    return Err(self.err("expected a factor after `*`".into()));
                }
            } else if !self.starts_factor() {
                break;
            }
            factors.push(self.factor()?);
        }
        Ok(Term { negated, factors })
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.idx;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.idx += 1;
        }
        let s: String = self.chars[start..self.idx].iter().map(|&(_, c)| c).collect();
        s.parse().map_err(|_| Error::Syntax {
            pos: self.chars.get(start).map_or(self.len, |&(p, _)| p),
            msg: "expected an integer".into(),
        })
    }

    fn match_variable(&self) -> Option<(usize, usize)> {
        let rest: String = self.chars[self.idx..].iter().map(|&(_, c)| c).collect();
        self.variables
            .iter()
            .enumerate()
            .filter(|(_, v)| rest.starts_with(v.as_str()))
            .max_by_key(|(_, v)| v.len())
            .map(|(i, v)| (i, v.chars().count()))
    }

    fn factor(&mut self) -> Result<Factor> {
        let c = self.peek().expect("caller checked");
        if c.is_ascii_digit() {
            let n = self.integer()?;
            let mut v = Q::from_integer(n.into());
            if self.peek() == Some('/') {
                self.idx += 1;
                let d = self.integer()?;
                if d == 0 {
                    return Err(self.err("zero denominator".into()));
                }
                v /= Q::from_integer(d.into());
            }
            return Ok(Factor::Coefficient(Coefficient::Rational(v)));
        }
        if c == '(' {
            self.idx += 1;
            let inner = self.expr()?;
            self.expect(')')?;
            let exponent = self.power()?;
            return Ok(Factor::Group { inner, exponent });
        }
        if let Some((var, width)) = self.match_variable() {
            self.idx += width;
            let exponent = self.power()?;
            return Ok(Factor::Power { var, exponent });
        }
        let start = self.pos();
        self.idx += 1;
        if c == 'F' && self.eat('{') {
            let degree = self.affine()?;
            self.expect('}')?;
            self.expect('(')?;
            let u = self.expr()?;
            self.expect(',')?;
            let v = self.expr()?;
            self.expect(')')?;
            return Ok(Factor::Form { degree, u, v });
        }
        let mut name = c.to_string();
        while let Some(d) = self.peek().filter(char::is_ascii_digit) {
            name.push(d);
            self.idx += 1;
        }
        if self.params.contains(&name.as_str()) {
            return Err(Error::Syntax {
                pos: start,
                msg: format!("parameter `{name}` used as a factor"),
            });
        }
        self.skip_ws();
        if self.peek() == Some('^') {
            return Err(Error::Undeclared {
                kind: "variable",
                name,
                pos: start,
            });
        }
        Ok(Factor::Coefficient(Coefficient::Ident(name)))
    }

    fn power(&mut self) -> Result<Affine> {
        if !self.eat('^') {
            return Ok(Affine::constant(1));
        }
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Affine::constant(self.integer()?)),
            Some('{') => {
                self.idx += 1;
                let a = self.affine()?;
                self.expect('}')?;
                Ok(a)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let mut a = Affine::default();
                let p = self.param()?;
                a.coeffs.insert(p, 1);
                Ok(a)
            }
            _ => Err(self.err("expected an exponent".into())),
        }
    }

    fn param(&mut self) -> Result<String> {
        let pos = self.pos();
        let c = self.peek().ok_or_else(|| self.err("expected a parameter".into()))?;
        let name = c.to_string();
        if !self.params.contains(&name.as_str()) {
            return Err(Error::Undeclared {
                kind: "parameter",
                name,
                pos,
            });
        }
        self.idx += 1;
        Ok(name)
    }

    fn affine(&mut self) -> Result<Affine> {
        let mut out = Affine::default();
        self.skip_ws();
        let mut sign = 1;
        if let Some(c) = self.peek() {
            if is_minus(c) {
                sign = -1;
                self.idx += 1;
            } else if c == '+' {
                self.idx += 1;
            }
        }
        loop {
            self.skip_ws();
            let mut coeff = 1;
            let mut has_int = false;
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                coeff = self.integer()?;
                has_int = true;
                self.eat('*');
            }
            self.skip_ws();
            if self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
                let p = self.param()?;
                *out.coeffs.entry(p).or_insert(0) += sign * coeff;
            } else if has_int {
                out.constant += sign * coeff;
            } else {
                return Err(self.err("expected an integer or parameter".into()));
            }
            self.skip_ws();
            match self.peek() {
                Some('+') => sign = 1,
                Some(c) if is_minus(c) => sign = -1,
                _ => break,
            }
            self.idx += 1;
        }
        out.coeffs.retain(|_, c| *c != 0);
        Ok(out)
    }
}

struct Labeler {
    next: usize,
}

impl Labeler {
    fn fresh(&mut self) -> CoefficientTag {
        self.next += 1;
        CoefficientTag::GenericNonzero(format!("c{}", self.next))
    }
}

fn exponent(a: &Affine, bindings: &BTreeMap<String, i64>) -> Result<u32> {
    let v = a.eval(bindings)?;
    u32::try_from(v).map_err(|_| Error::NegativeExponent(v))
}

/// Substitutes parameters and expands forms into a supported polynomial.
pub fn instantiate(
    expr: &PolynomialExpr,
    bindings: &BTreeMap<String, i64>,
) -> Result<SupportedPolynomial> {
    for p in &expr.params {
        if !bindings.contains_key(p) {
            return Err(Error::UnboundParameter(p.clone()));
        }
    }
    let mut labels = Labeler { next: 0 };
    eval_expr(&expr.body, expr.variables.len(), bindings, &mut labels)
}

fn eval_expr(
    e: &Expr,
    dim: usize,
    bindings: &BTreeMap<String, i64>,
    labels: &mut Labeler,
) -> Result<SupportedPolynomial> {
    let mut out = SupportedPolynomial::new(dim);
    for t in &e.terms {
        let mut p = SupportedPolynomial::constant(dim, CoefficientTag::one());
        for f in &t.factors {
            let g = match f {
                Factor::Coefficient(Coefficient::Rational(v)) => {
                    SupportedPolynomial::constant(dim, CoefficientTag::rational(v.clone()))
                }
                Factor::Coefficient(Coefficient::Ident(l)) => {
                    SupportedPolynomial::constant(dim, CoefficientTag::GenericNonzero(l.clone()))
                }
                Factor::Power { var, exponent: a } => {
                    let mut m = vec![0; dim];
                    m[*var] = exponent(a, bindings)?;
                    SupportedPolynomial::from_monomials(dim, [m])
                }
                Factor::Group { inner, exponent: a } => {
                    let k = exponent(a, bindings)?;
                    eval_expr(inner, dim, bindings, labels)?.pow(k)
                }
                Factor::Form { degree, u, v } => {
                    let k = exponent(degree, bindings)?;
                    let u = eval_expr(u, dim, bindings, labels)?;
                    let v = eval_expr(v, dim, bindings, labels)?;
                    let mut form = SupportedPolynomial::new(dim);
                    for j in (0..=k).rev() {
                        let c = SupportedPolynomial::constant(dim, labels.fresh());
                        form = form.add(&c.mul(&u.pow(j)).mul(&v.pow(k - j)));
                    }
                    form
                }
            };
            p = p.mul(&g);
        }
        if t.negated {
            p = p.mul(&SupportedPolynomial::constant(
                dim,
                CoefficientTag::Rational(-Q::one()),
            ));
        }
        out = out.add(&p);
    }
    Ok(out)
}

/// Parses and instantiates in one step with the default variables.
pub fn parse_polynomial(text: &str, bindings: &BTreeMap<String, i64>) -> Result<SupportedPolynomial> {
    let params: Vec<&str> = bindings.keys().map(String::as_str).collect();
    instantiate(&parse_expression(text, &params)?, bindings)
}

pub fn canonical_render(poly: &SupportedPolynomial) -> String {
    let names: Vec<String> = DEFAULT_VARIABLES.iter().map(|s| s.to_string()).collect();
    canonical_render_with(poly, &names)
}

/// Graded order: ascending total degree, ties broken by descending lexicographic
/// exponent (earlier variables first).
pub fn canonical_render_with(poly: &SupportedPolynomial, names: &[String]) -> String {
    if poly.is_empty() {
        return "0".into();
    }
    let mut terms: Vec<_> = poly.iter().collect();
    terms.sort_by(|(a, _), (b, _)| {
        let da: u64 = a.iter().map(|&e| u64::from(e)).sum();
        let db: u64 = b.iter().map(|&e| u64::from(e)).sum();
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    let mut out = String::new();
    for (i, (m, tag)) in terms.into_iter().enumerate() {
        let mono: Vec<String> = m
            .iter()
            .zip(names)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        let (negative, coeff) = match tag {
            CoefficientTag::Rational(v) if v.abs().is_one() => (v.is_negative(), None),
            CoefficientTag::Rational(v) => (v.is_negative(), Some(fmt_q(&v.abs()))),
            CoefficientTag::GenericNonzero(l) => (false, Some(l.clone())),
            CoefficientTag::Zero => unreachable!("zero tags are never stored"),
        };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mut parts: Vec<String> = coeff.into_iter().collect();
        parts.extend(mono);
        if parts.is_empty() {
            parts.push("1".into());
        }
        out.push_str(&parts.join("*"));
    }
    out
}
