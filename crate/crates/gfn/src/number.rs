//! Locale-free float text in the style of C's `%.17g`.

const DIGITS: usize = 17;

/// Formats `x` with 17 significant digits, trailing zeros removed, switching
/// to exponent notation when the decimal exponent is below -4 or at least 17.
pub fn fmt_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= DIGITS as i32 {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS as i32 - 1 - exp) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::fmt_g17;

    #[test]
    fn matches_printf() {
        // reference strings from printf("%.17g")
        let cases = [
            (0.5, "0.5"),
            (1.0, "1"),
            (-2.0, "-2"),
            (0.1, "0.10000000000000001"),
            (1.0 / 3.0, "0.33333333333333331"),
            (1e-5, "1.0000000000000001e-05"),
            (1.5e-300, "1.5000000000000001e-300"),
            (123456789.0, "123456789"),
            (1e17, "1e+17"),
            (1e16, "10000000000000000"),
            (0.0001, "0.0001"),
            (-0.0, "-0"),
            (std::f64::consts::PI, "3.1415926535897931"),
            (2.5e-5, "2.5000000000000001e-05"),
        ];
        for (x, s) in cases {
            assert_eq!(fmt_g17(x), s);
        }
    }

    #[test]
    fn round_trips() {
        for x in [
            0.1,
            7.0e-310,
            f64::MAX,
            f64::MIN_POSITIVE,
            1.0 - f64::EPSILON,
            -3.3e-7,
        ] {
            assert_eq!(fmt_g17(x).parse::<f64>().unwrap(), x);
        }
    }
}
