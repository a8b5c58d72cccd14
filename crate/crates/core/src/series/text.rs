//! Plain-text series format:
//!
//! ```text
//! var=q order=3
//! -1: 1/1
//! 0: 24/1
//! ```
//!
//! Every coefficient of the certified window is written, zeros included, so
//! the lowest listed exponent is the series' `min_exp`.

use std::fmt::Write as _;

use super::rational::{format_rational, parse_rational};
use super::{QSeries, Rational, Series, SeriesError, Var};

fn parse_var(s: &str) -> Option<Var> {
    match s {
        "q" => Some(Var::Q),
        "u" => Some(Var::U),
        "y" => Some(Var::Y),
        _ => None,
    }
}

pub fn format_series(s: &QSeries) -> String {
    let mut out = format!("var={} order={}\n", s.var(), s.order());
    for (i, c) in s.coeffs().iter().enumerate() {
        let _ = writeln!(out, "{}: {}", s.min_exp() + i as i64, format_rational(c));
    }
    out
}

pub fn parse_series(text: &str) -> Result<QSeries, SeriesError> {
    let err = |m: String| SeriesError::Parse(m);
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| err("empty input".into()))?;
    let (mut var, mut order) = (None, None);
    for tok in header.split_whitespace() {
        match tok.split_once('=') {
            Some(("var", v)) => var = Some(parse_var(v).ok_or_else(|| err(format!("unknown variable `{v}`")))?),
            Some(("order", v)) => {
                order = Some(v.parse::<i64>().map_err(|_| err(format!("bad order `{v}`")))?)
            }
            _ => return Err(err(format!("unexpected header token `{tok}`"))),
        }
    }
    let var = var.ok_or_else(|| err("header lacks var=".into()))?;
    let order = order.ok_or_else(|| err("header lacks order=".into()))?;

    let mut terms: Vec<(i64, Rational)> = Vec::new();
    for line in lines {
        let (e, c) = line.split_once(':').ok_or_else(|| err(format!("bad term line `{line}`")))?;
        let e: i64 = e.trim().parse().map_err(|_| err(format!("bad exponent in `{line}`")))?;
        if e > order {
            return Err(err(format!("exponent {e} exceeds order {order}")));
        }
        if let Some((last, _)) = terms.last() {
            if e <= *last {
                return Err(err(format!("exponents must increase (line `{line}`)")));
            }
        }
        terms.push((e, parse_rational(c)?));
    }
    let min_exp = terms.first().map(|(e, _)| *e).unwrap_or(order + 1);
    let mut coeffs = vec![Rational::from_integer(0.into()); (order - min_exp + 1) as usize];
    for (e, c) in terms {
        coeffs[(e - min_exp) as usize] = c;
    }
    Ok(Series::new(var, min_exp, coeffs))
}
