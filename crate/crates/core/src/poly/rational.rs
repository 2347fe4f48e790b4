use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Coefficient field of every polynomial in the crate; always kept reduced.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn exact_int_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return exact_int_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// The rational `r` with `r^k == q`, if one exists.
pub fn nth_root_exact(q: &Rational, k: u32) -> Option<Rational> {
    if k == 0 {
        return None;
    }
    if q.is_zero() {
        return Some(Rational::zero());
    }
    let n = exact_int_root(q.numer(), k)?;
    let d = exact_int_root(q.denom(), k)?;
    Some(Rational::new(n, d))
}

pub fn is_perfect_power(q: &Rational, k: u32) -> bool {
    k == 1 || nth_root_exact(q, k).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots() {
        assert_eq!(nth_root_exact(&rat(-8, 27), 3), Some(rat(-2, 3)));
        assert_eq!(nth_root_exact(&rat(4, 9), 2), Some(rat(2, 3)));
        assert_eq!(nth_root_exact(&rat(-4, 1), 2), None);
        assert_eq!(nth_root_exact(&rat(2, 7), 5), None);
        assert!(is_perfect_power(&rat(16, 81), 4));
    }
}
