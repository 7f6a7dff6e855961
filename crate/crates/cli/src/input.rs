//! Text forms accepted for points of `[0, 1]`.

use gasket_core::exact::rational::{check_unit_interval, parse_rational, Rational};
use gasket_core::exact::Expansion;
use gasket_core::Result;

/// `p/q`, a decimal, or a binary expansion `0.pre(period)`.
pub fn parse_point(text: &str) -> Result<Rational> {
    let s = if text.contains('(') { Expansion::parse(text)?.value() } else { parse_rational(text)? };
    check_unit_interval(&s)?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gasket_core::exact::rational::rat;
    use gasket_core::Error;

    #[test]
    fn grammar() {
        assert_eq!(parse_point("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_point("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_point("0.(01)").unwrap(), rat(1, 3));
        assert_eq!(parse_point("0.1(0)").unwrap(), rat(1, 2));
        assert_eq!(parse_point("1").unwrap(), rat(1, 1));
        assert!(matches!(parse_point("abc"), Err(Error::Parse { .. })));
        assert!(matches!(parse_point("3/2"), Err(Error::Domain(_))));
    }
}
