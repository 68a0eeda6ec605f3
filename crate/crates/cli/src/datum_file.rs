//! The TOML datum file format.

use std::collections::BTreeMap;

use f4tori::arith::Poly;
use f4tori::error::ArithError;
use f4tori::etale::datum::{CubicEtale, Datum, LStructuredFactor, DEFAULT_PROBE_BOUND};
use f4tori::etale::InvolutionFactor;
use f4tori::realizability::{RealFormF4, SplitStatus};
use serde::{Deserialize, Serialize};
use toml::Spanned;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    #[serde(rename = "L")]
    pub l: LSection,
    #[serde(rename = "E")]
    pub e: ESection,
    #[serde(rename = "G")]
    pub g: GSection,
    #[serde(default)]
    pub overrides: Overrides,
    #[serde(default)]
    pub options: Options,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LSection {
    pub poly: Spanned<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ESection {
    pub factors: Vec<FactorEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Quadratic,
    Split,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorEntry {
    pub fixed_poly: Spanned<String>,
    pub l_embedding: Spanned<String>,
    pub kind: Kind,
    pub d: Option<Spanned<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GSection {
    pub real_form_at_infinity: RealFormF4,
}

/// `finite_splitting.<factor index>.<prime> = "all_split" | "not_all_split"`.
#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    #[serde(default)]
    pub finite_splitting: BTreeMap<String, BTreeMap<String, SplitStatus>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default = "default_bound")]
    pub prime_search_bound: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_variable")]
    pub variable: String,
}

impl Default for Options {
    fn default() -> Self {
        Options { prime_search_bound: default_bound(), seed: 0, variable: default_variable() }
    }
}

fn default_bound() -> u64 {
    DEFAULT_PROBE_BOUND
}

fn default_variable() -> String {
    "t".to_string()
}

/// A diagnostic anchored at a line and column of the input.
#[derive(Debug)]
pub struct Located {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, column)
}

pub struct Parsed {
    pub datum: Datum,
    pub form: RealFormF4,
    pub options: Options,
    pub overrides: Overrides,
}

pub fn parse(src: &str) -> Result<Parsed, Located> {
    let file: DatumFile = toml::from_str(src).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| line_col(src, s.start));
        Located { line, column, message: e.message().to_string() }
    })?;
    let var = file.options.variable.clone();
    let at = |s: &Spanned<String>, message: String| {
        // The span covers the opening quote.
        let (line, column) = line_col(src, s.span().start + 1);
        Located { line, column, message }
    };
    let poly = |s: &Spanned<String>| {
        Poly::parse_in(s.get_ref(), &var).map_err(|e| match e {
            ArithError::Parse { column, message } => {
                let (line, c) = line_col(src, s.span().start + 1);
                Located { line, column: c + column - 1, message }
            }
            other => at(s, other.to_string()),
        })
    };

    let g = poly(&file.l.poly)?;
    let l = CubicEtale::new(&g).map_err(|e| at(&file.l.poly, e.to_string()))?;
    let mut factors = Vec::with_capacity(file.e.factors.len());
    for (j, f) in file.e.factors.iter().enumerate() {
        let fixed = poly(&f.fixed_poly)?;
        let base = match (f.kind, &f.d) {
            (Kind::Split, None) => InvolutionFactor::split(&fixed),
            (Kind::Quadratic, Some(d)) => InvolutionFactor::quadratic(&fixed, &poly(d)?),
            (Kind::Split, Some(d)) => return Err(at(d, format!("factor {j}: d given for a split factor"))),
            (Kind::Quadratic, None) => {
                return Err(at(&f.fixed_poly, format!("factor {j}: quadratic factor needs d")));
            }
        }
        .map_err(|e| at(&f.fixed_poly, format!("factor {j}: {e}")))?;
        let lam = poly(&f.l_embedding)?;
        let factor =
            LStructuredFactor::new(base, &lam, &l).map_err(|e| at(&f.l_embedding, format!("factor {j}: {e}")))?;
        factors.push(factor);
    }
    if factors.is_empty() {
        return Err(Located { line: 1, column: 1, message: "E has no factors".into() });
    }
    for (idx, primes) in &file.overrides.finite_splitting {
        let ok = idx.parse::<usize>().is_ok_and(|i| i < factors.len());
        if !ok {
            return Err(Located { line: 1, column: 1, message: format!("override for unknown factor {idx}") });
        }
        for p in primes.keys() {
            if !p.parse::<u64>().is_ok_and(f4tori::arith::local::is_prime_u64) {
                return Err(Located { line: 1, column: 1, message: format!("override key {p} is not a prime") });
            }
        }
    }
    Ok(Parsed {
        datum: Datum::new(l, factors),
        form: file.g.real_form_at_infinity,
        options: file.options,
        overrides: file.overrides,
    })
}
