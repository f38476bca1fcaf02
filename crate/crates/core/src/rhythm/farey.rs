use super::Fraction;

/// The Farey sequence of order `n`: every reduced fraction in `[0, 1]` whose
/// denominator is at most `n`, ascending.
///
/// ```
/// use cantus::rhythm::farey;
/// let f5: Vec<String> = farey(5).iter().map(|f| f.to_string()).collect();
/// assert_eq!(f5.join(" "), "0/1 1/5 1/4 1/3 2/5 1/2 3/5 2/3 3/4 4/5 1/1");
/// ```
pub fn farey(n: u64) -> Vec<Fraction> {
    assert!(n >= 1, "Farey order must be at least 1");
    // next-term recurrence on neighbours a/b < c/d
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, n);
    let mut out = vec![Fraction::ZERO];
    while c <= n {
        out.push(Fraction::new(c, d).expect("positive denominator"));
        let k = (n + b) / d;
        (a, b, c, d) = (c, d, k * c - a, k * d - b);
    }
    out
}

/// `(x.num + y.num) / (x.den + y.den)`, reduced.
pub fn mediant(x: Fraction, y: Fraction) -> Fraction {
    Fraction::new(x.num() + y.num(), x.den() + y.den()).expect("positive denominator")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_one() {
        assert_eq!(farey(1), vec![Fraction::ZERO, Fraction::ONE]);
    }

    #[test]
    fn mediants() {
        let f = |n, d| Fraction::new(n, d).unwrap();
        assert_eq!(mediant(f(0, 1), f(1, 1)), f(1, 2));
        assert_eq!(mediant(f(1, 3), f(1, 2)), f(2, 5));
    }
}
