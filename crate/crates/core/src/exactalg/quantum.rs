use super::laurent::Laurent;

/// Quantum integer `[n] = (v^n - v^-n) / (v - v^-1)`, with `[-n] = -[n]`.
pub fn qint(n: i64) -> Laurent {
    if n < 0 {
        return -qint(-n);
    }
    Laurent::from_terms((0..n).map(|k| (n - 1 - 2 * k, 1)))
}

/// `[n]! = [1][2]...[n]`.
pub fn qfactorial(n: u32) -> Laurent {
    (1..=n as i64).fold(Laurent::one(), |acc, k| &acc * &qint(k))
}

/// Quantum binomial `[n choose k]`, for any integer `n` and `k >= 0`.
pub fn qbinomial(n: i64, k: u32) -> Laurent {
    let top = (0..k as i64).fold(Laurent::one(), |acc, j| &acc * &qint(n - j));
    top.div_exact(&qfactorial(k))
        .expect("quantum binomials are Laurent polynomials")
}

#[cfg(test)]
mod tests {
    use super::super::laurent::Point;
    use super::*;
    use alloc::string::ToString;
    use num_bigint::BigInt;

    #[test]
    fn small_values() {
        assert_eq!(qint(3).to_string(), "v^2 + 1 + v^-2");
        assert_eq!(qint(0), Laurent::zero());
        assert_eq!(qint(-2), -qint(2));
        assert_eq!(qbinomial(4, 2).to_string(), "v^4 + v^2 + 2 + v^-2 + v^-4");
        assert_eq!(qbinomial(2, 3), Laurent::zero());
        assert_eq!(qfactorial(0), Laurent::one());
    }

    #[test]
    fn specializations() {
        for n in -6i64..=6 {
            assert_eq!(qint(n).specialize(Point::PlusOne), BigInt::from(n));
            let sign = if (n - 1).rem_euclid(2) == 0 { 1 } else { -1 };
            assert_eq!(qint(n).specialize(Point::MinusOne), BigInt::from(sign * n));
        }
    }

    #[test]
    fn pascal_rule() {
        // [n choose k] = v^-k [n-1 choose k] + v^(n-k) [n-1 choose k-1]
        for n in 1..8i64 {
            for k in 1..=n as u32 {
                let lhs = qbinomial(n, k);
                let rhs = &qbinomial(n - 1, k).shift(-(k as i64))
                    + &qbinomial(n - 1, k - 1).shift(n - k as i64);
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }
}
