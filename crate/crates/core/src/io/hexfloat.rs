//! C99 `%a`-style hexadecimal float text, exact in both directions.

pub fn format(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    let sign = if x.is_sign_negative() { "-" } else { "" };
    if x.is_infinite() {
        return format!("{sign}inf");
    }
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i32;
    let fraction = bits & ((1u64 << 52) - 1);
    let (lead, exp) = match (biased, fraction) {
        (0, 0) => (0, 0),
        (0, _) => (0, -1022),
        _ => (1, biased - 1023),
    };
    let mut digits = format!("{fraction:013x}");
    while digits.ends_with('0') {
        digits.pop();
    }
    if digits.is_empty() {
        format!("{sign}0x{lead}p{exp:+}")
    } else {
        format!("{sign}0x{lead}.{digits}p{exp:+}")
    }
}

pub fn parse(s: &str) -> Option<f64> {
    let (negative, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let value = match body {
        "inf" => f64::INFINITY,
        "nan" => f64::NAN,
        _ => {
            let body = body.strip_prefix("0x").or_else(|| body.strip_prefix("0X"))?;
            let (mantissa, exponent) = body.split_once(['p', 'P'])?;
            let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
            if int_part.is_empty() || int_part.len() + frac_part.len() > 16 {
                return None;
            }
            let digits = u64::from_str_radix(&format!("{int_part}{frac_part}"), 16).ok()?;
            if digits >> 53 != 0 {
                return None;
            }
            let exp: i32 = exponent.parse().ok()?;
            let scale = exp.checked_sub(4 * frac_part.len() as i32)?;
            // two steps keep the intermediate normal, so the product is exact
            // whenever the result is representable
            let half = scale / 2;
            digits as f64 * 2f64.powi(half) * 2f64.powi(scale - half)
        }
    };
    Some(if negative { -value } else { value })
}
