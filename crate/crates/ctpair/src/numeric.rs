//! Fixed-point big-integer real and complex arithmetic, exact real-root
//! isolation for the defining cubic, and continued-fraction rational
//! reconstruction. Supports the square-root search in the cubic algebra:
//! all numeric answers produced here are verified exactly by the caller.
//!
//! A real number at working precision `prec` is a `BigInt` mantissa m
//! representing m / 2^prec.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn fx_from_rational(q: &BigRational, prec: u64) -> BigInt {
    (q.numer() << prec).div_floor(q.denom())
}

pub fn fx_to_rational(m: &BigInt, prec: u64) -> BigRational {
    BigRational::new(m.clone(), BigInt::one() << prec)
}

pub fn fx_mul(a: &BigInt, b: &BigInt, prec: u64) -> BigInt {
    (a * b) >> prec
}

pub fn fx_div(a: &BigInt, b: &BigInt, prec: u64) -> BigInt {
    assert!(!b.is_zero(), "fixed-point division by zero");
    (a << prec).div_floor(b)
}

/// Integer square root of a nonnegative fixed-point value, at the same scale.
pub fn fx_sqrt(a: &BigInt, prec: u64) -> BigInt {
    assert!(!a.is_negative(), "fx_sqrt of negative value");
    (a << prec).sqrt()
}

/// Complex number in fixed-point representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cx {
    pub re: BigInt,
    pub im: BigInt,
}

impl Cx {
    pub fn real(re: BigInt) -> Self {
        Cx {
            re,
            im: BigInt::zero(),
        }
    }

    pub fn conj(&self) -> Self {
        Cx {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn neg(&self) -> Self {
        Cx {
            re: -&self.re,
            im: -&self.im,
        }
    }

    pub fn add(&self, o: &Cx) -> Self {
        Cx {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &Cx) -> Self {
        Cx {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &Cx, prec: u64) -> Self {
        Cx {
            re: fx_mul(&self.re, &o.re, prec) - fx_mul(&self.im, &o.im, prec),
            im: fx_mul(&self.re, &o.im, prec) + fx_mul(&self.im, &o.re, prec),
        }
    }

    pub fn div(&self, o: &Cx, prec: u64) -> Self {
        // (a * conj b) / |b|^2; numerator and denominator both carry scale
        // 2^(2 prec), so one further shift restores the scale.
        let nr = &self.re * &o.re + &self.im * &o.im;
        let ni = &self.im * &o.re - &self.re * &o.im;
        let den = &o.re * &o.re + &o.im * &o.im;
        assert!(!den.is_zero(), "complex division by zero");
        Cx {
            re: (nr << prec).div_floor(&den),
            im: (ni << prec).div_floor(&den),
        }
    }

    /// Principal square root: the branch with re >= 0.
    pub fn sqrt(&self, prec: u64) -> Self {
        if self.im.is_zero() {
            if self.re.is_negative() {
                return Cx {
                    re: BigInt::zero(),
                    im: fx_sqrt(&(-&self.re), prec),
                };
            }
            return Cx {
                re: fx_sqrt(&self.re, prec),
                im: BigInt::zero(),
            };
        }
        // r = |self|: re^2 + im^2 sits at scale 2^(2 prec), so its integer
        // square root lands back on scale 2^prec.
        let r = (&self.re * &self.re + &self.im * &self.im).sqrt();
        let two = BigInt::from(2);
        let re = fx_sqrt(&((&r + &self.re).div_floor(&two)), prec);
        let mut im = fx_sqrt(&((&r - &self.re).div_floor(&two)), prec);
        if self.im.is_negative() {
            im = -im;
        }
        Cx { re, im }
    }
}

/// One real root of the defining cubic, as an exact isolating interval
/// (possibly degenerate when the root is rational and hit exactly).
#[derive(Debug, Clone)]
pub struct RealRootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RealRootInterval {
    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }
}

fn eval_cubic(p: &BigRational, q: &BigRational, x: &BigRational) -> BigRational {
    // x^3 + p x + q
    x * x * x + p * x + q
}

/// Isolate all real roots of X^3 + pX + q (squarefree) by exact dyadic
/// bisection. `expected` is 1 or 3 from the sign of the discriminant.
/// Returned intervals are ordered ascending and each has width <=
/// 2^(-min_width_bits) unless degenerate.
pub fn isolate_real_roots(
    p: &BigRational,
    q: &BigRational,
    expected: usize,
    min_width_bits: u64,
) -> Vec<RealRootInterval> {
    let one = BigRational::one();
    let bound = &one + p.abs().max(q.abs());
    let mut lo_grid = -bound.clone();
    let mut hi_grid = bound.clone();
    // Make endpoints safely outside all roots (monic: f(-M) < 0 < f(M)).
    while eval_cubic(p, q, &lo_grid) >= BigRational::zero() {
        lo_grid = &lo_grid * BigRational::from_integer(2.into());
    }
    while eval_cubic(p, q, &hi_grid) <= BigRational::zero() {
        hi_grid = &hi_grid * BigRational::from_integer(2.into());
    }

    // Refine a dyadic grid until the expected number of sign-change cells
    // (or exact hits) appears.
    let mut cells = 1usize;
    loop {
        let step = (&hi_grid - &lo_grid) / BigRational::from_integer(BigInt::from(cells));
        let mut intervals: Vec<RealRootInterval> = Vec::new();
        let mut prev_x = lo_grid.clone();
        let mut prev_v = eval_cubic(p, q, &prev_x);
        let mut ok = !prev_v.is_zero();
        if ok {
            for idx in 1..=cells {
                let x = &lo_grid + &step * BigRational::from_integer(BigInt::from(idx));
                let v = eval_cubic(p, q, &x);
                if v.is_zero() {
                    intervals.push(RealRootInterval {
                        lo: x.clone(),
                        hi: x.clone(),
                    });
                } else {
                    if prev_v.is_negative() && v.is_positive()
                        || prev_v.is_positive() && v.is_negative()
                    {
                        intervals.push(RealRootInterval {
                            lo: prev_x.clone(),
                            hi: x.clone(),
                        });
                    }
                }
                prev_x = x;
                prev_v = v;
            }
        }
        if ok && intervals.len() == expected {
            // Bisect each nondegenerate interval down to the requested width.
            let two = BigRational::from_integer(2.into());
            let width_target = BigRational::new(BigInt::one(), BigInt::one() << min_width_bits);
            for iv in &mut intervals {
                while &iv.hi - &iv.lo > width_target {
                    let mid = (&iv.lo + &iv.hi) / &two;
                    let v = eval_cubic(p, q, &mid);
                    if v.is_zero() {
                        iv.lo = mid.clone();
                        iv.hi = mid;
                        break;
                    }
                    let vlo = eval_cubic(p, q, &iv.lo);
                    if (vlo.is_negative() && v.is_positive())
                        || (vlo.is_positive() && v.is_negative())
                    {
                        iv.hi = mid;
                    } else {
                        iv.lo = mid;
                    }
                }
            }
            return intervals;
        }
        cells *= 2;
        assert!(cells <= 1 << 24, "real-root isolation failed to converge");
    }
}

/// Shrink an isolating interval by `extra_bits` further exact bisections.
pub fn refine_interval(
    p: &BigRational,
    q: &BigRational,
    iv: &RealRootInterval,
    extra_bits: u64,
) -> RealRootInterval {
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let two = BigRational::from_integer(2.into());
    for _ in 0..extra_bits {
        if lo == hi {
            break;
        }
        let mid = (&lo + &hi) / &two;
        let v = eval_cubic(p, q, &mid);
        if v.is_zero() {
            lo = mid.clone();
            hi = mid;
            break;
        }
        let vlo = eval_cubic(p, q, &lo);
        if (vlo.is_negative() && v.is_positive()) || (vlo.is_positive() && v.is_negative()) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    RealRootInterval { lo, hi }
}

/// Polish an approximate real root of X^3 + pX + q to full fixed-point
/// precision by Newton iteration.
pub fn newton_real_root(
    p: &BigRational,
    q: &BigRational,
    seed: &BigRational,
    prec: u64,
) -> BigInt {
    let pf = fx_from_rational(p, prec);
    let qf = fx_from_rational(q, prec);
    let three = BigInt::from(3);
    let mut x = fx_from_rational(seed, prec);
    // Quadratic convergence: each step roughly doubles correct bits from a
    // ~prec/2-bit seed; a generous fixed count covers all precisions used.
    let iters = 64 - (prec.leading_zeros() as u64) + 8;
    for _ in 0..iters {
        let x2 = fx_mul(&x, &x, prec);
        let fx = fx_mul(&x2, &x, prec) + fx_mul(&pf, &x, prec) + &qf;
        let dfx = &three * &x2 + &pf;
        if dfx.is_zero() {
            break;
        }
        x -= fx_div(&fx, &dfx, prec);
    }
    x
}

/// All three roots of X^3 + pX + q in fixed point, ordered: real roots
/// ascending, then (for one real root) the conjugate pair with +imaginary
/// part first. Also returns the exact isolating intervals of the real roots.
pub fn cubic_roots(
    p: &BigRational,
    q: &BigRational,
    prec: u64,
) -> (Vec<Cx>, Vec<RealRootInterval>) {
    // disc = -4 p^3 - 27 q^2; squarefree cubic has disc != 0.
    let four = BigRational::from_integer(4.into());
    let twenty_seven = BigRational::from_integer(27.into());
    let disc = -(&four * p * p * p) - &twenty_seven * q * q;
    assert!(!disc.is_zero(), "cubic must be squarefree");
    let n_real = if disc.is_positive() { 3 } else { 1 };

    // Exact bisection only seeds Newton; keep it shallow even when the
    // target precision is large.
    let seed_bits = prec.min(512).max(96);
    let intervals = isolate_real_roots(p, q, n_real, seed_bits);
    let mut roots: Vec<Cx> = intervals
        .iter()
        .map(|iv| Cx::real(newton_real_root(p, q, &iv.midpoint(), prec)))
        .collect();

    if n_real == 1 {
        // Remaining quadratic factor: X^2 + rX + (r^2 + p) with r the real root.
        let r = &roots[0].re;
        let r2 = fx_mul(r, r, prec);
        let pf = fx_from_rational(p, prec);
        // quadratic discriminant = r^2 - 4(r^2 + p) = -(3r^2 + 4p), negative
        // here; clamp against rounding noise at the scale floor.
        let mut minus_d = BigInt::from(3) * &r2 + BigInt::from(4) * &pf;
        if minus_d.is_negative() {
            minus_d = BigInt::zero();
        }
        let im = fx_sqrt(&minus_d, prec) >> 1;
        let re = -(r >> 1);
        roots.push(Cx {
            re: re.clone(),
            im: im.clone(),
        });
        roots.push(Cx { re, im: -im });
    }
    (roots, intervals)
}

/// Best rational approximation with denominator <= den_bound, by continued
/// fractions on the exact value of the fixed-point number.
pub fn reconstruct_rational(value: &BigRational, den_bound: &BigInt) -> BigRational {
    let mut x = value.clone();
    let mut p_prev = BigInt::one();
    let mut q_prev = BigInt::zero();
    let mut p_cur = x.floor().to_integer();
    let mut q_cur = BigInt::one();
    let mut frac = &x - BigRational::from_integer(p_cur.clone());
    while !frac.is_zero() {
        x = frac.recip();
        let a = x.floor().to_integer();
        frac = &x - BigRational::from_integer(a.clone());
        let p_next = &a * &p_cur + &p_prev;
        let q_next = &a * &q_cur + &q_prev;
        if &q_next > den_bound {
            break;
        }
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
    }
    BigRational::new(p_cur, q_cur)
}

/// Exact interval evaluation of c0 + c1 X + c2 X^2 over [lo, hi].
pub fn quadratic_over_interval(
    c: &[BigRational; 3],
    lo: &BigRational,
    hi: &BigRational,
) -> (BigRational, BigRational) {
    let mul_iv = |alo: &BigRational, ahi: &BigRational, blo: &BigRational, bhi: &BigRational| {
        let cands = [alo * blo, alo * bhi, ahi * blo, ahi * bhi];
        let mut mn = cands[0].clone();
        let mut mx = cands[0].clone();
        for v in &cands[1..] {
            if v < &mn {
                mn = v.clone();
            }
            if v > &mx {
                mx = v.clone();
            }
        }
        (mn, mx)
    };
    let (sq_lo, sq_hi) = mul_iv(lo, hi, lo, hi);
    let sq_lo = if lo.is_negative() && hi.is_positive() {
        BigRational::zero()
    } else {
        sq_lo
    };
    let (t1_lo, t1_hi) = mul_iv(&c[1], &c[1], lo, hi);
    let (t2_lo, t2_hi) = if c[2].is_negative() {
        (&c[2] * &sq_hi, &c[2] * &sq_lo)
    } else {
        (&c[2] * &sq_lo, &c[2] * &sq_hi)
    };
    (&c[0] + t1_lo + t2_lo, &c[0] + t1_hi + t2_hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_i};

    #[test]
    fn fixed_point_basics() {
        let prec = 64;
        let a = fx_from_rational(&rat(3, 2), prec);
        let b = fx_from_rational(&rat(5, 4), prec);
        let prod = fx_to_rational(&fx_mul(&a, &b, prec), prec);
        assert!((prod - rat(15, 8)).abs() < rat(1, 1 << 30));
        let root = fx_to_rational(&fx_sqrt(&fx_from_rational(&rat_i(2), prec), prec), prec);
        assert!((&root * &root - rat_i(2)).abs() < rat(1, 1 << 30));
    }

    #[test]
    fn complex_sqrt_squares_back() {
        let prec = 96;
        let z = Cx {
            re: fx_from_rational(&rat(-7, 3), prec),
            im: fx_from_rational(&rat(4, 5), prec),
        };
        let s = z.sqrt(prec);
        let back = s.mul(&s, prec);
        let tol = BigInt::one() << (prec - 40);
        assert!((&back.re - &z.re).abs() < tol);
        assert!((&back.im - &z.im).abs() < tol);
    }

    #[test]
    fn cubic_root_isolation_split() {
        // X^3 - 9X: roots -3, 0, 3 (I = 3, J = 0 gives p = -9, q = 0)
        let p = rat_i(-9);
        let q = rat_i(0);
        let (roots, ivs) = cubic_roots(&p, &q, 128);
        assert_eq!(ivs.len(), 3);
        assert_eq!(roots.len(), 3);
        for (root, expect) in roots.iter().zip([-3i64, 0, 3]) {
            let val = fx_to_rational(&root.re, 128);
            assert!((val - rat_i(expect)).abs() < rat(1, 1 << 40));
            assert!(root.im.is_zero());
        }
    }

    #[test]
    fn cubic_root_isolation_complex_pair() {
        // X^3 + 2: one real root -2^(1/3), complex pair
        let p = rat_i(0);
        let q = rat_i(2);
        let (roots, ivs) = cubic_roots(&p, &q, 128);
        assert_eq!(ivs.len(), 1);
        let r = fx_to_rational(&roots[0].re, 128);
        assert!((&r * &r * &r + rat_i(2)).abs() < rat(1, 1 << 40));
        assert!(roots[1].im.is_positive());
        assert_eq!(roots[2].im, -roots[1].im.clone());
    }

    #[test]
    fn reconstruction_recovers_small_denominators() {
        let prec = 128u64;
        let target = rat(-8656, 9);
        let noisy = fx_to_rational(&(fx_from_rational(&target, prec) + BigInt::from(3)), prec);
        let got = reconstruct_rational(&noisy, &BigInt::from(1000));
        assert_eq!(got, target);
    }

    #[test]
    fn interval_evaluation_bounds() {
        // c(X) = X over [-1, 2]
        let c = [rat_i(0), rat_i(1), rat_i(0)];
        let (lo, hi) = quadratic_over_interval(&c, &rat_i(-1), &rat_i(2));
        assert!(lo <= rat_i(-1) && hi >= rat_i(2));
        // c(X) = X^2 over [-1, 2] must include 0
        let c = [rat_i(0), rat_i(0), rat_i(1)];
        let (lo, hi) = quadratic_over_interval(&c, &rat_i(-1), &rat_i(2));
        assert!(lo <= BigRational::zero() && hi >= rat_i(4));
    }
}
