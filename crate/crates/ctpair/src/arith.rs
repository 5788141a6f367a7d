//! Exact arithmetic helpers on arbitrary-precision integers and rationals:
//! valuations, square detection, Legendre symbols, integer factorization,
//! and parsing/formatting of exact rational strings.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// Shorthand for an integer-valued rational.
pub fn rat_i(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational n/d (d must be nonzero).
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse an exact rational from "num" or "num/den" (optional sign, no floats).
pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseError::BadRational(s.to_string()));
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| ParseError::BadRational(s.to_string()))?;
    let den: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| ParseError::BadRational(s.to_string()))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(ParseError::BadRational(s.to_string()));
    }
    Ok(BigRational::new(num, den))
}

/// Format a rational as "num" or "num/den" (lowest terms, denominator positive).
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// p-adic valuation of a nonzero integer.
pub fn val_p_int(n: &BigInt, p: &BigInt) -> u64 {
    assert!(!n.is_zero(), "valuation of zero");
    let mut v = 0u64;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(p);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return v;
        }
    }
}

/// p-adic valuation of a nonzero rational.
pub fn val_p(q: &BigRational, p: &BigInt) -> i64 {
    val_p_int(q.numer(), p) as i64 - val_p_int(q.denom(), p) as i64
}

/// Strip all factors of p: returns (valuation, unit part) with n = p^v * unit.
pub fn split_p_int(n: &BigInt, p: &BigInt) -> (u64, BigInt) {
    let v = val_p_int(n, p);
    (v, n / p.pow(v as u32))
}

/// Write q = p^v * u with u a p-adic unit (a rational with p-free numerator
/// and denominator). Returns (v, u).
pub fn split_p(q: &BigRational, p: &BigInt) -> (i64, BigRational) {
    let (vn, un) = split_p_int(q.numer(), p);
    let (vd, ud) = split_p_int(q.denom(), p);
    (vn as i64 - vd as i64, BigRational::new(un, ud))
}

/// The residue of a p-adic unit rational modulo p^k (0 <= result < p^k).
pub fn unit_residue(u: &BigRational, pk: &BigInt) -> BigInt {
    let n = u.numer().mod_floor(pk);
    let d = u.denom().mod_floor(pk);
    let dinv = mod_inverse(&d, pk).expect("denominator not a unit mod p^k");
    (n * dinv).mod_floor(pk)
}

/// Inverse of a modulo m, when gcd(a, m) = 1.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Legendre symbol (a/p) for odd prime p and a not divisible by p: ±1.
pub fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    let e = (p - 1u32) >> 1;
    let r = a.mod_floor(p).modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// True if n is a perfect square (n >= 0).
pub fn is_int_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

/// True if q is the square of a rational.
pub fn is_rational_square(q: &BigRational) -> bool {
    !q.is_negative() && is_int_square(q.numer()) && is_int_square(q.denom())
}

/// Exact rational square root, if one exists. Returns the nonnegative root.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let rn = q.numer().sqrt();
    let rd = q.denom().sqrt();
    if &(&rn * &rn) == q.numer() && &(&rd * &rd) == q.denom() {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

/// gcd of a slice of integers (absolute value; 0 for an all-zero slice).
pub fn gcd_all(xs: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in xs {
        g = g.gcd(x);
    }
    g
}

/// Content of a list of rationals: the positive rational c such that dividing
/// by c leaves coprime integers. The list must contain a nonzero entry.
pub fn rational_content(xs: &[BigRational]) -> BigRational {
    assert!(xs.iter().any(|x| !x.is_zero()), "content of zero list");
    let mut den_lcm = BigInt::one();
    for x in xs {
        if !x.is_zero() {
            den_lcm = den_lcm.lcm(x.denom());
        }
    }
    let ints: Vec<BigInt> = xs
        .iter()
        .map(|x| x.numer() * (&den_lcm / x.denom()))
        .collect();
    let g = gcd_all(&ints);
    BigRational::new(g, den_lcm)
}

// ---------------------------------------------------------------------------
// Integer factorization: deterministic Miller-Rabin + Pollard rho.
// Inputs here are discriminants and contents of small quartics, so factors
// comfortably fit the rho range.
// ---------------------------------------------------------------------------

/// Miller-Rabin primality test. Deterministic for n < 3.3 * 10^24 via the
/// standard 13-base set; the same bases are kept for larger n (no inputs of
/// that size arise from quartic discriminants in practice).
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let sp = BigUint::from(small);
        if n == &sp {
            return true;
        }
        if (n % &sp).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if (n % &two).is_zero() {
        return two;
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = two.clone();
        let mut y = two.clone();
        let mut d = one.clone();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && &d != n {
            return d;
        }
        c += 1u32;
    }
}

fn factor_into(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    // Trial division peels small primes quickly before rho.
    let mut m = n;
    let mut p = 2u64;
    while p < 10_000 {
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        while (&m % &bp).is_zero() {
            out.push(bp.clone());
            m /= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m.is_one() {
        return;
    }
    if is_prime(&m) {
        out.push(m);
        return;
    }
    let d = pollard_rho(&m);
    let q = &m / &d;
    factor_into(d, out);
    factor_into(q, out);
}

/// Distinct prime factors of |n|, ascending. |n| must be nonzero.
pub fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let m = n.abs().to_biguint().expect("nonnegative");
    assert!(!m.is_zero(), "factoring zero");
    let mut fs = Vec::new();
    factor_into(m, &mut fs);
    let mut out: Vec<BigInt> = fs.into_iter().map(BigInt::from).collect();
    out.sort();
    out.dedup();
    out
}

/// Primes dividing numerator or denominator of a nonzero rational, ascending.
pub fn rational_support(q: &BigRational) -> Vec<BigInt> {
    assert!(!q.is_zero());
    let mut ps = prime_factors(q.numer());
    ps.extend(prime_factors(q.denom()));
    ps.sort();
    ps.dedup();
    ps
}

/// Primes up to and including `bound`, ascending (sieve; bound is small).
pub fn primes_up_to(bound: u64) -> Vec<BigInt> {
    let mut sieve = vec![true; (bound + 1) as usize];
    let mut out = Vec::new();
    for i in 2..=bound as usize {
        if sieve[i] {
            out.push(BigInt::from(i));
            let mut j = i * i;
            while j <= bound as usize {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

/// True when the p-adic unit u is a square in Z_p^×:
/// quadratic residue mod p for odd p, and ≡ 1 (mod 8) for p = 2.
pub fn unit_is_square(u: &BigRational, p: &BigInt) -> bool {
    if p.to_u32() == Some(2) {
        unit_residue(u, &BigInt::from(8)) == BigInt::one()
    } else {
        let r = unit_residue(u, p);
        legendre(&r, p) == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-11", "4/9", "-2339/7", "0"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(format_rational(&q), s);
        }
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn valuations() {
        let p = BigInt::from(3);
        assert_eq!(val_p(&rat(18, 1), &p), 2);
        assert_eq!(val_p(&rat(4, 9), &p), -2);
        let (v, u) = split_p(&rat(18, 5), &p);
        assert_eq!(v, 2);
        assert_eq!(u, rat(2, 5));
    }

    #[test]
    fn content_examples() {
        // 6x^2 + 10z^2 -> 2
        assert_eq!(
            rational_content(&[rat_i(6), rat_i(0), rat_i(10)]),
            rat_i(2)
        );
        // gamma_1 = (4/9)(5, -16, -12) -> 4/9
        assert_eq!(
            rational_content(&[rat(20, 9), rat(-64, 9), rat(-48, 9)]),
            rat(4, 9)
        );
        // -3x^4 -> 3 (sign stripped)
        assert_eq!(
            rational_content(&[rat_i(-3), rat_i(0), rat_i(0), rat_i(0), rat_i(0)]),
            rat_i(3)
        );
    }

    #[test]
    fn squares_and_legendre() {
        assert!(is_rational_square(&rat(49, 64)));
        assert!(!is_rational_square(&rat(-49, 64)));
        assert!(!is_rational_square(&rat(2, 1)));
        assert_eq!(rational_sqrt(&rat(225, 16)).unwrap(), rat(15, 4));
        let p = BigInt::from(7);
        assert_eq!(legendre(&BigInt::from(2), &p), 1);
        assert_eq!(legendre(&BigInt::from(3), &p), -1);
    }

    #[test]
    fn factorization() {
        let n = BigInt::from(-2338816); // -2^12 * 571
        assert_eq!(
            prime_factors(&n),
            vec![BigInt::from(2), BigInt::from(571)]
        );
        assert!(is_prime(&BigUint::from(571u32)));
        assert!(!is_prime(&BigUint::from(572u32)));
        assert_eq!(primes_up_to(11).len(), 5);
    }

    #[test]
    fn unit_squares() {
        let two = BigInt::from(2);
        assert!(unit_is_square(&rat(17, 1), &two));
        assert!(!unit_is_square(&rat(5, 1), &two));
        assert!(unit_is_square(&rat(-223, 1), &two)); // -223 ≡ 1 (mod 8)
        let three = BigInt::from(3);
        assert!(unit_is_square(&rat(-11, 1), &three)); // -11 ≡ 1 (mod 3)
        assert!(!unit_is_square(&rat(2, 1), &three));
    }
}
