//! Exact rationals used for ε and α thresholds.

use num_rational::Ratio;

use crate::error::{Error, Result};

/// An exact rational number. Parsed from `P/Q` or an integer literal.
pub type Rational = Ratio<i64>;

/// Parses `P/Q` (or `P`) into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: i64 = num
        .parse()
        .map_err(|_| Error::precondition(format!("invalid rational numerator in {s:?}")))?;
    let den: i64 = den
        .parse()
        .map_err(|_| Error::precondition(format!("invalid rational denominator in {s:?}")))?;
    if den == 0 {
        return Err(Error::precondition(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Checks `0 < r < upper` where `upper` is given as `p/q`.
pub(crate) fn check_open_interval(name: &str, r: Rational, upper: Rational) -> Result<()> {
    if *r.numer() <= 0 || r >= upper {
        return Err(Error::precondition(format!(
            "{name} = {r} must lie in (0, {upper})"
        )));
    }
    Ok(())
}

/// `|value| <= r * scale`, evaluated by cross multiplication.
pub(crate) fn abs_at_most(value: i64, r: Rational, scale: u64) -> bool {
    let lhs = (value as i128).abs() * (*r.denom() as i128);
    let rhs = (*r.numer() as i128) * (scale as i128);
    lhs <= rhs
}
