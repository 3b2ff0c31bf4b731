use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Generalized binomial coefficient `C(n, k)` for any integer `n` and `k >= 0`.
pub fn binom(n: i64, k: u32) -> Rat {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k as i64 {
        num *= BigInt::from(n - t);
        den *= BigInt::from(t + 1);
    }
    Rat::new(num, den)
}

/// `(-1)^k`.
pub fn sign_pow(k: i64) -> Rat {
    if k.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

pub fn to_small(r: &Rat) -> Option<(i64, i64)> {
    Some((r.numer().to_i64()?, r.denom().to_i64()?))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
