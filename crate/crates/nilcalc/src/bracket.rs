//! Bracket polynomial expressions: trees over integer variables with
//! sums, products, rational constants, and the signed fractional part,
//! evaluated exactly, plus the exact product identity and cross-checks
//! against nilmanifold evaluations.
//!
//! Expressions parse from a tiny prefix grammar:
//! `(frac e)`, `(+ e e)`, `(* e e)`, `(const p/q)`, `(var i)`.

use crate::nilseq::NilcharSpec;
use crate::scalar::{parse_rat, rat_int, signed_frac, Rational, TorusPoint};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BracketError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expression uses variable {var} but {arity} were supplied")]
    Arity { var: usize, arity: usize },
    #[error("fractional parts nested deeper than 3")]
    TooDeep,
    #[error("boundary-flag rate {flagged}/{total} exceeds 1%; experiment aborted")]
    BoundaryRate { flagged: usize, total: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub enum BracketExpr {
    Const(Rational),
    Var(usize),
    Sum(Box<BracketExpr>, Box<BracketExpr>),
    Prod(Box<BracketExpr>, Box<BracketExpr>),
    Frac(Box<BracketExpr>),
}

impl BracketExpr {
    pub fn constant(c: Rational) -> Self {
        BracketExpr::Const(c)
    }

    pub fn var(i: usize) -> Self {
        BracketExpr::Var(i)
    }

    pub fn sum(a: BracketExpr, b: BracketExpr) -> Self {
        BracketExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: BracketExpr, b: BracketExpr) -> Self {
        BracketExpr::Prod(Box::new(a), Box::new(b))
    }

    pub fn frac(a: BracketExpr) -> Self {
        BracketExpr::Frac(Box::new(a))
    }

    /// `{c * n_i}`: the workhorse monomial factor.
    pub fn frac_of(c: Rational, var: usize) -> Self {
        Self::frac(Self::prod(Self::constant(c), Self::var(var)))
    }

    pub fn frac_depth(&self) -> u32 {
        match self {
            BracketExpr::Const(_) | BracketExpr::Var(_) => 0,
            BracketExpr::Sum(a, b) | BracketExpr::Prod(a, b) => a.frac_depth().max(b.frac_depth()),
            BracketExpr::Frac(a) => 1 + a.frac_depth(),
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            BracketExpr::Const(_) => None,
            BracketExpr::Var(i) => Some(*i),
            BracketExpr::Sum(a, b) | BracketExpr::Prod(a, b) => a.max_var().max(b.max_var()),
            BracketExpr::Frac(a) => a.max_var(),
        }
    }

    fn check(&self, arity: usize) -> Result<(), BracketError> {
        if self.frac_depth() > 3 {
            return Err(BracketError::TooDeep);
        }
        if let Some(v) = self.max_var() {
            if v >= arity {
                return Err(BracketError::Arity { var: v, arity });
            }
        }
        Ok(())
    }
}

/// Exact rational value (the exponent fed to `e(.)`), with `{.}` the
/// signed fractional part.
pub fn eval_bracket(expr: &BracketExpr, n: &[i64]) -> Result<Rational, BracketError> {
    expr.check(n.len())?;
    Ok(eval_rec(expr, n))
}

fn eval_rec(expr: &BracketExpr, n: &[i64]) -> Rational {
    match expr {
        BracketExpr::Const(c) => c.clone(),
        BracketExpr::Var(i) => rat_int(n[*i]),
        BracketExpr::Sum(a, b) => eval_rec(a, n) + eval_rec(b, n),
        BracketExpr::Prod(a, b) => eval_rec(a, n) * eval_rec(b, n),
        BracketExpr::Frac(a) => signed_frac(&eval_rec(a, n)),
    }
}

// ---------------------------------------------------------------------
// prefix grammar

pub fn parse(input: &str) -> Result<BracketExpr, BracketError> {
    let tokens = tokenize(input)?;
    let mut pos = 0usize;
    let expr = parse_expr(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(BracketError::Parse(format!(
            "trailing tokens after expression: {:?}",
            &tokens[pos..]
        )));
    }
    Ok(expr)
}

fn tokenize(input: &str) -> Result<Vec<String>, BracketError> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for c in input.chars() {
        match c {
            '(' | ')' => {
                if !cur.is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
                tokens.push(c.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    if tokens.is_empty() {
        return Err(BracketError::Parse("empty input".into()));
    }
    Ok(tokens)
}

fn parse_expr(tokens: &[String], pos: &mut usize) -> Result<BracketExpr, BracketError> {
    let tok = tokens.get(*pos).ok_or_else(|| BracketError::Parse("unexpected end".into()))?;
    if tok != "(" {
        return Err(BracketError::Parse(format!("expected '(' at token {tok:?}")));
    }
    *pos += 1;
    let head = tokens
        .get(*pos)
        .ok_or_else(|| BracketError::Parse("unexpected end after '('".into()))?
        .clone();
    *pos += 1;
    let expr = match head.as_str() {
        "+" => {
            let a = parse_expr(tokens, pos)?;
            let b = parse_expr(tokens, pos)?;
            BracketExpr::sum(a, b)
        }
        "*" => {
            let a = parse_expr(tokens, pos)?;
            let b = parse_expr(tokens, pos)?;
            BracketExpr::prod(a, b)
        }
        "frac" => BracketExpr::frac(parse_expr(tokens, pos)?),
        "const" => {
            let lit = tokens
                .get(*pos)
                .ok_or_else(|| BracketError::Parse("missing constant".into()))?;
            *pos += 1;
            BracketExpr::constant(parse_rat(lit).map_err(BracketError::Parse)?)
        }
        "var" => {
            let lit = tokens
                .get(*pos)
                .ok_or_else(|| BracketError::Parse("missing variable index".into()))?;
            *pos += 1;
            BracketExpr::var(
                lit.parse().map_err(|_| BracketError::Parse(format!("bad index {lit:?}")))?,
            )
        }
        other => return Err(BracketError::Parse(format!("unknown head {other:?}"))),
    };
    match tokens.get(*pos) {
        Some(t) if t == ")" => {
            *pos += 1;
            Ok(expr)
        }
        other => Err(BracketError::Parse(format!("expected ')', found {other:?}"))),
    }
}

// ---------------------------------------------------------------------
// the exact product identity

#[derive(Clone, Debug, serde::Serialize)]
pub struct IdentityReport {
    pub pass: bool,
    pub checked: usize,
    pub witness: Option<i64>,
}

/// Verifies, exactly and for all `n` in `[1, n_max]`:
/// `{alpha n} beta n + {beta n} alpha n = alpha beta n^2 + {alpha n}{beta n}  (mod 1)`,
/// the expansion of the integrality of
/// `(alpha n - {alpha n})(beta n - {beta n})`.
pub fn check_product_identity(alpha: &Rational, beta: &Rational, n_max: i64) -> IdentityReport {
    for n in 1..=n_max {
        let nn = rat_int(n);
        let an = alpha * &nn;
        let bn = beta * &nn;
        let fa = signed_frac(&an);
        let fb = signed_frac(&bn);
        let lhs = &fa * &bn + &fb * &an;
        let rhs = &an * &bn + &fa * &fb;
        if !(lhs - rhs).is_integer() {
            return IdentityReport { pass: false, checked: (n - 1) as usize, witness: Some(n) };
        }
    }
    IdentityReport { pass: true, checked: n_max as usize, witness: None }
}

// ---------------------------------------------------------------------
// cross-validation against nilcharacters

#[derive(Clone, Debug, serde::Serialize)]
pub struct CompareReport {
    pub pass: bool,
    pub compared: usize,
    pub flagged: usize,
    pub first_mismatch: Option<i64>,
}

/// Asserts `e(eval_bracket(expr, n))` equals the scalar nilcharacter
/// value for all `n in [1, n_range]` away from flagged boundary points,
/// exactly.  Aborts when more than 1% of the points are flagged.
pub fn compare_with_nilchar(
    expr: &BracketExpr,
    spec: &NilcharSpec,
    n_range: i64,
) -> Result<CompareReport, BracketError> {
    compare_with_nilchar_map(expr, spec, n_range, |n| vec![n])
}

/// Same, with an explicit map from the scalar index to the orbit's
/// domain tuple (used by the two-variable diagonal evaluation).
pub fn compare_with_nilchar_map(
    expr: &BracketExpr,
    spec: &NilcharSpec,
    n_range: i64,
    to_domain: impl Fn(i64) -> Vec<i64>,
) -> Result<CompareReport, BracketError> {
    let mut compared = 0usize;
    let mut flagged = 0usize;
    let mut first_mismatch = None;
    for n in 1..=n_range {
        let v = spec
            .eval(&to_domain(n))
            .map_err(|e| BracketError::Parse(e.to_string()))?;
        if v.flagged {
            flagged += 1;
            continue;
        }
        compared += 1;
        let expected = TorusPoint::new(eval_bracket(expr, &[n])?);
        if v.scalar_phase() != &expected && first_mismatch.is_none() {
            first_mismatch = Some(n);
        }
    }
    if flagged * 100 > n_range as usize {
        return Err(BracketError::BoundaryRate { flagged, total: n_range as usize });
    }
    Ok(CompareReport { pass: first_mismatch.is_none(), compared, flagged, first_mismatch })
}

/// `{alpha n} beta n` as an expression in one variable.
pub fn bracket_monomial(alpha: &Rational, beta: &Rational) -> BracketExpr {
    BracketExpr::prod(
        BracketExpr::frac_of(alpha.clone(), 0),
        BracketExpr::prod(BracketExpr::constant(beta.clone()), BracketExpr::var(0)),
    )
}

/// The symmetrized two-variable form
/// `(1/2){alpha n1} beta n2 + (1/2){alpha n2} beta n1`.
pub fn symmetrized_bilinear(alpha: &Rational, beta: &Rational) -> BracketExpr {
    let half = crate::scalar::rat_i64(1, 2);
    let term = |u: usize, v: usize| {
        BracketExpr::prod(
            BracketExpr::constant(half.clone()),
            BracketExpr::prod(
                BracketExpr::frac_of(alpha.clone(), u),
                BracketExpr::prod(BracketExpr::constant(beta.clone()), BracketExpr::var(v)),
            ),
        )
    };
    BracketExpr::sum(term(0, 1), term(1, 0))
}

/// `2 {alpha n} beta n - {alpha n}{beta n}`, the diagonal of the
/// multilinearisation character.
pub fn multilinear_diagonal(alpha: &Rational, beta: &Rational) -> BracketExpr {
    let two_main = BracketExpr::prod(
        BracketExpr::constant(rat_int(2)),
        bracket_monomial(alpha, beta),
    );
    let cross = BracketExpr::prod(
        BracketExpr::constant(rat_int(-1)),
        BracketExpr::prod(
            BracketExpr::frac_of(alpha.clone(), 0),
            BracketExpr::frac_of(beta.clone(), 0),
        ),
    );
    BracketExpr::sum(two_main, cross)
}
