use super::LinalgError;
use num::BigRational;

/// Exact rational scalar: arbitrary-precision, always reduced, denominator
/// positive. These invariants are maintained by `num`'s `Ratio` type.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Rational from a numerator/denominator pair. Panics on `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses `"p/q"` or `"p"` with optional sign and surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let t = s.trim();
    let bad = || LinalgError::BadRational(s.to_string());
    match t.split_once('/') {
        Some((num, den)) => {
            let n: num::BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: num::BigInt = den.trim().parse().map_err(|_| bad())?;
            if d == 0.into() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: num::BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Renders as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-7", "3/4", "-3/4", "22/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(parse_rational(" 6/4 ").unwrap(), frac(3, 2));
        assert_eq!(parse_rational("4/-2").unwrap(), rat(-2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn reduced_with_positive_denominator() {
        let r = frac(-4, -6);
        assert_eq!(format_rational(&r), "2/3");
    }
}
