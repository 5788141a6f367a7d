//! Arithmetic in the etale cubic algebra L = Q[phi]/(phi^3 - 3I phi + J):
//! ring operations, norms, inverses, and square roots of elements.
//!
//! Elements are represented uniquely as c0 + c1 phi + c2 phi^2. All ring
//! operations take the algebra as context; two elements combined through the
//! same `CubicAlgebra` value always share a parent by construction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_rational_square, rational_sqrt};
use crate::error::EtaleError;
use crate::numeric::{
    cubic_roots, fx_from_rational, fx_to_rational, quadratic_over_interval, reconstruct_rational,
    refine_interval, Cx,
};

/// Element of L as a coefficient triple (c0, c1, c2) for c0 + c1 phi + c2 phi^2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AlgElement {
    pub c: [BigRational; 3],
}

impl AlgElement {
    pub fn new(c0: BigRational, c1: BigRational, c2: BigRational) -> Self {
        AlgElement { c: [c0, c1, c2] }
    }

    pub fn from_rational(r: BigRational) -> Self {
        AlgElement {
            c: [r, BigRational::zero(), BigRational::zero()],
        }
    }

    pub fn from_i64(c0: i64, c1: i64, c2: i64) -> Self {
        AlgElement::new(
            crate::arith::rat_i(c0),
            crate::arith::rat_i(c1),
            crate::arith::rat_i(c2),
        )
    }

    pub fn zero() -> Self {
        AlgElement::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        AlgElement::from_rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// As a rational, when c1 = c2 = 0.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.c[1].is_zero() && self.c[2].is_zero() {
            Some(&self.c[0])
        } else {
            None
        }
    }

    /// Negate so the first nonzero coefficient (in c0, c1, c2 order) is
    /// positive; the identity on zero.
    pub fn sign_normalized(&self) -> Self {
        for x in &self.c {
            if x.is_positive() {
                return self.clone();
            }
            if x.is_negative() {
                return AlgElement::new(-&self.c[0], -&self.c[1], -&self.c[2]);
            }
        }
        self.clone()
    }
}

/// Tuning for the square-root reconstruction.
#[derive(Debug, Clone)]
pub struct SqrtConfig {
    /// Starting precision in bits.
    pub base_bits: u64,
    /// Number of precision doublings before giving up.
    pub max_doublings: u32,
}

impl Default for SqrtConfig {
    fn default() -> Self {
        SqrtConfig {
            base_bits: 128,
            max_doublings: 10,
        }
    }
}

/// The algebra L = Q[phi]/(phi^3 - 3I phi + J), with the factorization of the
/// defining cubic over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicAlgebra {
    big_i: BigRational,
    big_j: BigRational,
    /// Monic irreducible factors, ascending coefficients, sorted by degree
    /// then lexicographically. Degrees sum to 3.
    factors: Vec<Vec<BigRational>>,
}

impl CubicAlgebra {
    pub fn new(big_i: BigRational, big_j: BigRational) -> Result<Self, EtaleError> {
        let four = crate::arith::rat_i(4);
        if &four * &big_i * &big_i * &big_i == &big_j * &big_j {
            return Err(EtaleError::SingularInvariants);
        }
        let factors = factor_cubic(&big_i, &big_j);
        Ok(CubicAlgebra {
            big_i,
            big_j,
            factors,
        })
    }

    pub fn invariants(&self) -> (&BigRational, &BigRational) {
        (&self.big_i, &self.big_j)
    }

    /// Degrees of the irreducible factors of the defining cubic: one of
    /// [3], [1, 2], [1, 1, 1].
    pub fn factor_degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.len() - 1).collect()
    }

    pub fn factors(&self) -> &[Vec<BigRational>] {
        &self.factors
    }

    /// Defining cubic X^3 - 3I X + J, ascending coefficients.
    fn defining_poly(&self) -> Vec<BigRational> {
        vec![
            self.big_j.clone(),
            -(crate::arith::rat_i(3) * &self.big_i),
            BigRational::zero(),
            BigRational::one(),
        ]
    }

    pub fn phi(&self) -> AlgElement {
        AlgElement::from_i64(0, 1, 0)
    }

    pub fn add(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        AlgElement::new(&a.c[0] + &b.c[0], &a.c[1] + &b.c[1], &a.c[2] + &b.c[2])
    }

    pub fn sub(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        AlgElement::new(&a.c[0] - &b.c[0], &a.c[1] - &b.c[1], &a.c[2] - &b.c[2])
    }

    pub fn neg(&self, a: &AlgElement) -> AlgElement {
        AlgElement::new(-&a.c[0], -&a.c[1], -&a.c[2])
    }

    pub fn scale(&self, a: &AlgElement, r: &BigRational) -> AlgElement {
        AlgElement::new(&a.c[0] * r, &a.c[1] * r, &a.c[2] * r)
    }

    /// Product reduced by phi^3 = 3I phi - J, phi^4 = 3I phi^2 - J phi.
    pub fn mul(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        let mut t = [
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ];
        for i in 0..3 {
            if a.c[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                if b.c[j].is_zero() {
                    continue;
                }
                t[i + j] += &a.c[i] * &b.c[j];
            }
        }
        let three_i = crate::arith::rat_i(3) * &self.big_i;
        let c0 = &t[0] - &self.big_j * &t[3];
        let c1 = &t[1] + &three_i * &t[3] - &self.big_j * &t[4];
        let c2 = &t[2] + &three_i * &t[4];
        AlgElement::new(c0, c1, c2)
    }

    pub fn square(&self, a: &AlgElement) -> AlgElement {
        self.mul(a, a)
    }

    /// Determinant of multiplication by x on the basis (1, phi, phi^2);
    /// norm(r) = r^3 for rational r.
    pub fn norm(&self, x: &AlgElement) -> BigRational {
        let col0 = x.clone();
        let col1 = self.mul(x, &self.phi());
        let col2 = self.mul(x, &AlgElement::from_i64(0, 0, 1));
        let m = [col0.c, col1.c, col2.c];
        // columns m[j], det of 3x3
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[1][0] * (&m[0][1] * &m[2][2] - &m[0][2] * &m[2][1])
            + &m[2][0] * (&m[0][1] * &m[1][2] - &m[0][2] * &m[1][1])
    }

    pub fn is_unit(&self, x: &AlgElement) -> bool {
        !self.norm(x).is_zero()
    }

    /// Inverse via extended gcd with the defining cubic. A zero divisor is
    /// reported together with the factor of f it is supported on.
    pub fn inverse(&self, x: &AlgElement) -> Result<AlgElement, EtaleError> {
        let a = trim(vec![x.c[0].clone(), x.c[1].clone(), x.c[2].clone()]);
        let f = self.defining_poly();
        if a.is_empty() {
            return Err(EtaleError::NotAUnit {
                factor: poly_to_string(&monic(&f)),
            });
        }
        let (g, u, _v) = poly_ext_gcd(&a, &f);
        if g.len() > 1 {
            return Err(EtaleError::NotAUnit {
                factor: poly_to_string(&monic(&g)),
            });
        }
        // u * a ≡ g (mod f) with g a nonzero constant.
        let ginv = g[0].recip();
        let mut c = [
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ];
        for (i, ui) in u.iter().enumerate().take(3) {
            c[i] = ui * &ginv;
        }
        Ok(AlgElement::new(c[0].clone(), c[1].clone(), c[2].clone()))
    }

    /// All m in L with m^2 = c, one representative per {m, -m} pair, sorted.
    /// An empty list is a certificate of non-squareness (negative norm,
    /// non-square norm, or a real embedding certified negative). If the
    /// numeric reconstruction exhausts its precision ceiling without either
    /// finding a root or certifying non-squareness, the undetermined state is
    /// reported as `PrecisionExhausted`.
    pub fn sqrt(&self, c: &AlgElement) -> Result<Vec<AlgElement>, EtaleError> {
        self.sqrt_with(c, &SqrtConfig::default())
    }

    pub fn sqrt_with(
        &self,
        c: &AlgElement,
        config: &SqrtConfig,
    ) -> Result<Vec<AlgElement>, EtaleError> {
        if c.is_zero() {
            return Ok(vec![AlgElement::zero()]);
        }
        // norm(m^2) = norm(m)^2, so a square has square norm.
        let nc = self.norm(c);
        if !is_rational_square(&nc) {
            return Ok(vec![]);
        }

        let p = -(crate::arith::rat_i(3) * &self.big_i);
        let q = self.big_j.clone();

        // Real-embedding certificate: c must be nonnegative at every real
        // root of f. Interval arithmetic over the exact isolating intervals
        // decides definite negativity.
        let (_, mut intervals) = cubic_roots(&p, &q, config.base_bits);
        for _ in 0..4 {
            let mut undecided = false;
            for iv in &intervals {
                let (lo, hi) = quadratic_over_interval(&c.c, &iv.lo, &iv.hi);
                if hi.is_negative() {
                    return Ok(vec![]);
                }
                if lo.is_negative() && !hi.is_negative() && iv.lo != iv.hi {
                    undecided = true;
                }
            }
            if !undecided {
                break;
            }
            intervals = intervals
                .iter()
                .map(|iv| refine_interval(&p, &q, iv, 64))
                .collect();
        }

        let mut den_bound = initial_denominator_bound(self, c);
        for round in 0..=config.max_doublings {
            let prec = config.base_bits << round;
            let (roots, ivs) = cubic_roots(&p, &q, prec);
            let n_real = ivs.len();
            // c evaluated at each root.
            let values: Vec<Cx> = roots
                .iter()
                .map(|z| {
                    let c0 = Cx::real(fx_from_rational(&c.c[0], prec));
                    let c1 = Cx::real(fx_from_rational(&c.c[1], prec));
                    let c2 = Cx::real(fx_from_rational(&c.c[2], prec));
                    c0.add(&c1.mul(z, prec)).add(&c2.mul(z, prec).mul(z, prec))
                })
                .collect();
            let w: Vec<Cx> = values.iter().map(|v| v.sqrt(prec)).collect();

            // Sign patterns modulo a global sign: the first root keeps +.
            // For a conjugate pair the second member is forced conjugate.
            let patterns: Vec<Vec<bool>> = if n_real == 3 {
                vec![
                    vec![false, false, false],
                    vec![false, false, true],
                    vec![false, true, false],
                    vec![false, true, true],
                ]
            } else {
                vec![vec![false, false, false], vec![false, true, true]]
            };

            let mut found: Vec<AlgElement> = Vec::new();
            for pat in &patterns {
                let mut ws: Vec<Cx> = Vec::with_capacity(3);
                for (i, flip) in pat.iter().enumerate() {
                    let base = if n_real == 1 && i == 2 {
                        w[1].conj()
                    } else {
                        w[i].clone()
                    };
                    ws.push(if *flip { base.neg() } else { base });
                }
                if let Some(cand) = reconstruct_element(&roots, &ws, prec, &den_bound) {
                    if self.square(&cand) == *c {
                        let normed = cand.sign_normalized();
                        if !found.contains(&normed) {
                            found.push(normed);
                        }
                    }
                }
            }
            if !found.is_empty() {
                found.sort();
                return Ok(found);
            }
            den_bound *= BigInt::from(10);
        }
        Err(EtaleError::PrecisionExhausted)
    }
}

/// Spec'd starting bound: the square of the largest denominator appearing in
/// c and the defining cubic.
fn initial_denominator_bound(alg: &CubicAlgebra, c: &AlgElement) -> BigInt {
    let mut d = BigInt::one();
    let three_i = crate::arith::rat_i(3) * &alg.big_i;
    for x in c.c.iter().chain([&three_i, &alg.big_j]) {
        if x.denom() > &d {
            d = x.denom().clone();
        }
    }
    &d * &d
}

/// Solve the Vandermonde system at the roots for the coefficient triple and
/// round each coordinate to a bounded-denominator rational.
fn reconstruct_element(
    roots: &[Cx],
    ws: &[Cx],
    prec: u64,
    den_bound: &BigInt,
) -> Option<AlgElement> {
    let det3 = |m: &[[Cx; 3]; 3]| -> Cx {
        let minor = |a: &Cx, b: &Cx, c: &Cx, d: &Cx| a.mul(d, prec).sub(&b.mul(c, prec));
        let t0 = minor(&m[1][1], &m[1][2], &m[2][1], &m[2][2]);
        let t1 = minor(&m[1][0], &m[1][2], &m[2][0], &m[2][2]);
        let t2 = minor(&m[1][0], &m[1][1], &m[2][0], &m[2][1]);
        m[0][0]
            .mul(&t0, prec)
            .sub(&m[0][1].mul(&t1, prec))
            .add(&m[0][2].mul(&t2, prec))
    };
    let row = |z: &Cx| -> [Cx; 3] {
        [
            Cx::real(BigInt::one() << prec),
            z.clone(),
            z.mul(z, prec),
        ]
    };
    let v = [row(&roots[0]), row(&roots[1]), row(&roots[2])];
    let dv = det3(&v);
    if dv.re.is_zero() && dv.im.is_zero() {
        return None;
    }
    let mut coeffs: Vec<BigRational> = Vec::with_capacity(3);
    for k in 0..3 {
        let mut vk = v.clone();
        for (i, w) in ws.iter().enumerate() {
            vk[i][k] = w.clone();
        }
        let sol = det3(&vk).div(&dv, prec);
        let approx = fx_to_rational(&sol.re, prec);
        coeffs.push(reconstruct_rational(&approx, den_bound));
    }
    Some(AlgElement::new(
        coeffs[0].clone(),
        coeffs[1].clone(),
        coeffs[2].clone(),
    ))
}

// --- univariate polynomial helpers over Q, ascending coefficients ---------

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while let Some(last) = p.last() {
        if last.is_zero() {
            p.pop();
        } else {
            break;
        }
    }
    p
}

fn monic(p: &[BigRational]) -> Vec<BigRational> {
    let lead = p.last().expect("nonzero polynomial");
    p.iter().map(|c| c / lead).collect()
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    loop {
        rem = trim(rem);
        if rem.len() < b.len() {
            break;
        }
        let shift = rem.len() - 1 - db;
        let coef = rem.last().unwrap() / lead;
        quot[shift] = coef.clone();
        for (i, bc) in b.iter().enumerate() {
            let t = bc * &coef;
            rem[shift + i] -= t;
        }
    }
    (trim(quot), rem)
}

/// Extended gcd: returns (g, u, v) with u a + v b = g; g is not normalized.
fn poly_ext_gcd(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut s0 = vec![BigRational::one()];
    let mut s1: Vec<BigRational> = vec![];
    let mut t0: Vec<BigRational> = vec![];
    let mut t1 = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s_next = poly_sub(&s0, &poly_mul(&q, &s1));
        let t_next = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s_next);
        t0 = std::mem::replace(&mut t1, t_next);
    }
    (r0, s0, t0)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

fn poly_to_string(p: &[BigRational]) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let var = match i {
            0 => String::new(),
            1 => "X".to_string(),
            _ => format!("X^{}", i),
        };
        let coef = if i > 0 && c.is_one() {
            String::new()
        } else if i > 0 && *c == -BigRational::one() {
            "-".to_string()
        } else {
            crate::arith::format_rational(c)
        };
        let sep = if coef.is_empty() || var.is_empty() {
            ""
        } else {
            "*"
        };
        parts.push(format!("{}{}{}", coef, sep, var));
    }
    let mut s = parts.join(" + ");
    s = s.replace("+ -", "- ");
    s
}

/// Factor X^3 - 3I X + J over Q by locating its rational roots exactly.
/// Rational roots scale to integer roots of a monic integer cubic, which are
/// pinned down by exact real-root isolation.
fn factor_cubic(big_i: &BigRational, big_j: &BigRational) -> Vec<Vec<BigRational>> {
    let three_i = crate::arith::rat_i(3) * big_i;
    let p = -three_i.clone();
    let q = big_j.clone();

    // X = Y / d turns f into Y^3 + (p d^2) Y + (q d^3), integral for
    // d = lcm of the denominators.
    let d: BigInt = p.denom().lcm(q.denom());
    let dr = BigRational::from_integer(d.clone());
    let a = &p * &dr * &dr;
    let b = &q * &dr * &dr * &dr;
    debug_assert!(a.denom().is_one() && b.denom().is_one());

    let four = crate::arith::rat_i(4);
    let disc = -(&four * &a * &a * &a) - crate::arith::rat_i(27) * &b * &b;
    let expected = if disc.is_positive() { 3 } else { 1 };
    let intervals = crate::numeric::isolate_real_roots(&a, &b, expected, 4);

    let mut roots: Vec<BigRational> = Vec::new();
    for iv in &intervals {
        let lo = iv.lo.floor().to_integer();
        let hi = iv.hi.ceil().to_integer();
        let mut y = lo.clone();
        while y <= hi {
            let yr = BigRational::from_integer(y.clone());
            if &yr * &yr * &yr + &a * &yr + &b == BigRational::zero() {
                let root = yr / &dr;
                if !roots.contains(&root) {
                    roots.push(root);
                }
                break;
            }
            y += 1;
        }
    }
    roots.sort();

    if roots.is_empty() {
        return vec![vec![
            q.clone(),
            p.clone(),
            BigRational::zero(),
            BigRational::one(),
        ]];
    }

    // Deflate by the smallest rational root r:
    // X^3 + pX + q = (X - r)(X^2 + rX + (r^2 + p)).
    let r = roots[0].clone();
    let quad_const = &r * &r + &p;
    let quad = vec![quad_const.clone(), r.clone(), BigRational::one()];
    // disc of the quadratic: r^2 - 4(r^2 + p) = -3r^2 - 4p
    let qdisc = -(crate::arith::rat_i(3) * &r * &r) - &four * &p;
    let mut factors: Vec<Vec<BigRational>> = Vec::new();
    if let Some(s) = rational_sqrt(&qdisc) {
        let two = crate::arith::rat_i(2);
        let r2 = (-&r + &s) / &two;
        let r3 = (-&r - &s) / &two;
        let mut all = vec![r, r2, r3];
        all.sort();
        for root in all {
            factors.push(vec![-root, BigRational::one()]);
        }
    } else {
        factors.push(vec![-r, BigRational::one()]);
        factors.push(quad);
    }
    factors.sort_by_key(|f| f.len());
    factors
}

/// Binary form with coefficients in L, descending powers of x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LForm {
    pub coeffs: Vec<AlgElement>,
}

/// The quadratic form H lives here: an LForm of degree 2.
pub type QuadFormL = LForm;

impl LForm {
    pub fn new(coeffs: Vec<AlgElement>) -> Self {
        assert!(!coeffs.is_empty());
        LForm { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &AlgElement {
        &self.coeffs[i]
    }

    /// Value at (x, z) with rational x, z.
    pub fn evaluate(&self, alg: &CubicAlgebra, x: &BigRational, z: &BigRational) -> AlgElement {
        let d = self.degree();
        let mut acc = AlgElement::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut t = BigRational::one();
            for _ in 0..(d - i) {
                t *= x;
            }
            for _ in 0..i {
                t *= z;
            }
            acc = alg.add(&acc, &alg.scale(c, &t));
        }
        acc
    }

    pub fn scale(&self, alg: &CubicAlgebra, s: &AlgElement) -> LForm {
        LForm::new(self.coeffs.iter().map(|c| alg.mul(c, s)).collect())
    }

    pub fn mul(&self, alg: &CubicAlgebra, other: &LForm) -> LForm {
        let mut out = vec![AlgElement::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = alg.add(&out[i + j], &alg.mul(a, b));
            }
        }
        LForm::new(out)
    }

    /// Split into the three rational binary forms multiplying 1, phi, phi^2.
    pub fn phi_components(&self) -> [crate::forms::BinaryForm; 3] {
        let comp = |k: usize| {
            crate::forms::BinaryForm::new(self.coeffs.iter().map(|c| c.c[k].clone()).collect())
        };
        [comp(0), comp(1), comp(2)]
    }
}
