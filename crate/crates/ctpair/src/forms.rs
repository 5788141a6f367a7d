//! Dense homogeneous and multihomogeneous forms with exact rational
//! coefficients.
//!
//! Coefficient order is descending powers of x everywhere: a `BinaryForm` of
//! degree d stores the coefficient of x^(d-i) z^i at index i, a `Form222`
//! stores the coefficient of x1^(2-i) z1^i x2^(2-j) z2^j x3^(2-k) z3^k at
//! (i, j, k). No floating point enters any operation.

use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::rational_content;
use crate::error::FormError;

/// Homogeneous binary form of arbitrary degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<BigRational>,
}

impl BinaryForm {
    /// Build from coefficients in descending powers of x (length = degree + 1).
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        BinaryForm::new(coeffs.iter().map(|&c| crate::arith::rat_i(c)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            coeffs: vec![BigRational::zero(); degree + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exact evaluation: sum of coeffs[i] x^(d-i) z^i.
    pub fn evaluate(&self, x: &BigRational, z: &BigRational) -> BigRational {
        let d = self.degree();
        let mut out = BigRational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = c.clone();
            for _ in 0..(d - i) {
                term *= x;
            }
            for _ in 0..i {
                term *= z;
            }
            out += term;
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        BinaryForm::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        BinaryForm::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&crate::arith::rat_i(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BigRational::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm::new(out)
    }

    /// Positive rational c with self/c having coprime integer coefficients.
    pub fn content(&self) -> Result<BigRational, FormError> {
        if self.is_zero() {
            return Err(FormError::ZeroForm);
        }
        Ok(rational_content(&self.coeffs))
    }
}

/// Bihomogeneous form in two variable pairs; coeffs[i][j] multiplies
/// x1^(d1-i) z1^i x2^(d2-j) z2^j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiForm {
    deg1: usize,
    deg2: usize,
    coeffs: Vec<Vec<BigRational>>,
}

impl BiForm {
    pub fn zero(deg1: usize, deg2: usize) -> Self {
        BiForm {
            deg1,
            deg2,
            coeffs: vec![vec![BigRational::zero(); deg2 + 1]; deg1 + 1],
        }
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.deg1, self.deg2)
    }

    pub fn coeff(&self, i: usize, j: usize) -> &BigRational {
        &self.coeffs[i][j]
    }

    pub fn coeff_mut(&mut self, i: usize, j: usize) -> &mut BigRational {
        &mut self.coeffs[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degrees(), other.degrees());
        let mut out = self.clone();
        for i in 0..=self.deg1 {
            for j in 0..=self.deg2 {
                out.coeffs[i][j] += &other.coeffs[i][j];
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        for row in &mut out.coeffs {
            for e in row {
                *e *= c;
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&crate::arith::rat_i(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BiForm::zero(self.deg1 + other.deg1, self.deg2 + other.deg2);
        for i1 in 0..=self.deg1 {
            for j1 in 0..=self.deg2 {
                if self.coeffs[i1][j1].is_zero() {
                    continue;
                }
                for i2 in 0..=other.deg1 {
                    for j2 in 0..=other.deg2 {
                        let t = &self.coeffs[i1][j1] * &other.coeffs[i2][j2];
                        out.coeffs[i1 + i2][j1 + j2] += t;
                    }
                }
            }
        }
        out
    }

    pub fn evaluate(
        &self,
        x1: &BigRational,
        z1: &BigRational,
        x2: &BigRational,
        z2: &BigRational,
    ) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..=self.deg1 {
            for j in 0..=self.deg2 {
                if self.coeffs[i][j].is_zero() {
                    continue;
                }
                let mut t = self.coeffs[i][j].clone();
                for _ in 0..(self.deg1 - i) {
                    t *= x1;
                }
                for _ in 0..i {
                    t *= z1;
                }
                for _ in 0..(self.deg2 - j) {
                    t *= x2;
                }
                for _ in 0..j {
                    t *= z2;
                }
                acc += t;
            }
        }
        acc
    }

    /// Substitute (x0, z0) into the first or second variable pair.
    pub fn specialize(
        &self,
        slot: usize,
        x0: &BigRational,
        z0: &BigRational,
    ) -> Result<BinaryForm, FormError> {
        assert!(slot == 1 || slot == 2, "slot must be 1 or 2");
        if x0.is_zero() && z0.is_zero() {
            return Err(FormError::ZeroPoint);
        }
        let (keep_deg, other_deg) = if slot == 1 {
            (self.deg2, self.deg1)
        } else {
            (self.deg1, self.deg2)
        };
        let mut out = BinaryForm::zero(keep_deg);
        for i in 0..=self.deg1 {
            for j in 0..=self.deg2 {
                if self.coeffs[i][j].is_zero() {
                    continue;
                }
                let (sub_idx, keep_idx) = if slot == 1 { (i, j) } else { (j, i) };
                let mut t = self.coeffs[i][j].clone();
                for _ in 0..(other_deg - sub_idx) {
                    t *= x0;
                }
                for _ in 0..sub_idx {
                    t *= z0;
                }
                out.coeffs[keep_idx] += t;
            }
        }
        Ok(out)
    }
}

/// Trihomogeneous (2,2,2)-form; coeffs[i][j][k] multiplies
/// x1^(2-i) z1^i x2^(2-j) z2^j x3^(2-k) z3^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form222 {
    coeffs: Vec<Vec<Vec<BigRational>>>,
}

impl Form222 {
    pub fn zero() -> Self {
        Form222 {
            coeffs: vec![vec![vec![BigRational::zero(); 3]; 3]; 3],
        }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize, usize) -> BigRational) -> Self {
        let mut out = Form222::zero();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    out.coeffs[i][j][k] = f(i, j, k);
                }
            }
        }
        out
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.coeffs[i][j][k]
    }

    pub fn coeff_mut(&mut self, i: usize, j: usize, k: usize) -> &mut BigRational {
        &mut self.coeffs[i][j][k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs
            .iter()
            .flatten()
            .flatten()
            .all(|c| c.is_zero())
    }

    /// Coefficients flattened in lexicographic (i, j, k) order.
    pub fn flat_coeffs(&self) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(27);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    out.push(self.coeffs[i][j][k].clone());
                }
            }
        }
        out
    }

    pub fn evaluate(&self, pts: [(&BigRational, &BigRational); 3]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    if self.coeffs[i][j][k].is_zero() {
                        continue;
                    }
                    let mut t = self.coeffs[i][j][k].clone();
                    for (idx, e) in [(0usize, i), (1, j), (2, k)] {
                        let (x, z) = pts[idx];
                        for _ in 0..(2 - e) {
                            t *= x;
                        }
                        for _ in 0..e {
                            t *= z;
                        }
                    }
                    acc += t;
                }
            }
        }
        acc
    }

    /// The (2,2)-form A, B or C when F is read as A x_k^2 + B x_k z_k + C z_k^2
    /// in the k-th variable pair (k in 1..=3). `which` selects 0 -> A, 1 -> B,
    /// 2 -> C. Remaining slots keep their ascending order.
    fn quadratic_layer(&self, k: usize, which: usize) -> BiForm {
        assert!((1..=3).contains(&k));
        let mut out = BiForm::zero(2, 2);
        for i in 0..3 {
            for j in 0..3 {
                for l in 0..3 {
                    let (in_k, rest) = match k {
                        1 => (i, (j, l)),
                        2 => (j, (i, l)),
                        _ => (l, (i, j)),
                    };
                    if in_k != which || self.coeffs[i][j][l].is_zero() {
                        continue;
                    }
                    *out.coeff_mut(rest.0, rest.1) += &self.coeffs[i][j][l];
                }
            }
        }
        out
    }

    /// disc_k(F) = B^2 - 4AC of F viewed as a quadratic in the k-th variable
    /// pair; a bihomogeneous (4,4)-form in the remaining pairs (ascending).
    pub fn disc_k(&self, k: usize) -> BiForm {
        let a = self.quadratic_layer(k, 0);
        let b = self.quadratic_layer(k, 1);
        let c = self.quadratic_layer(k, 2);
        let four = crate::arith::rat_i(4);
        b.mul(&b).sub(&a.mul(&c).scale(&four))
    }

    /// Substitute (x0, z0) into slot `slot` (1..=3); the result is a
    /// (2,2)-form in the remaining pairs, kept in ascending slot order.
    pub fn specialize(
        &self,
        slot: usize,
        x0: &BigRational,
        z0: &BigRational,
    ) -> Result<BiForm, FormError> {
        assert!((1..=3).contains(&slot));
        if x0.is_zero() && z0.is_zero() {
            return Err(FormError::ZeroPoint);
        }
        let mut out = BiForm::zero(2, 2);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    if self.coeffs[i][j][k].is_zero() {
                        continue;
                    }
                    let (sub_idx, rest) = match slot {
                        1 => (i, (j, k)),
                        2 => (j, (i, k)),
                        _ => (k, (i, j)),
                    };
                    let mut t = self.coeffs[i][j][k].clone();
                    for _ in 0..(2 - sub_idx) {
                        t *= x0;
                    }
                    for _ in 0..sub_idx {
                        t *= z0;
                    }
                    *out.coeff_mut(rest.0, rest.1) += t;
                }
            }
        }
        Ok(out)
    }

    /// Substitute points into two distinct slots; the result is a binary
    /// quadratic in the remaining slot.
    pub fn specialize2(
        &self,
        slot_j: usize,
        pt_j: (&BigRational, &BigRational),
        slot_k: usize,
        pt_k: (&BigRational, &BigRational),
    ) -> Result<BinaryForm, FormError> {
        assert!(slot_j != slot_k, "slots must be distinct");
        let first = self.specialize(slot_j, pt_j.0, pt_j.1)?;
        // After removing slot_j, the remaining slots are ordered ascending;
        // locate slot_k's position among them.
        let remaining: Vec<usize> = (1..=3).filter(|s| *s != slot_j).collect();
        let pos = remaining.iter().position(|s| *s == slot_k).unwrap() + 1;
        first.specialize(pos, pt_k.0, pt_k.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_i};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_rat(rng: &mut ChaCha8Rng) -> BigRational {
        rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))
    }

    fn rand_form222(rng: &mut ChaCha8Rng) -> Form222 {
        Form222::from_fn(|_, _, _| rand_rat(rng))
    }

    #[test]
    fn evaluate_monomials() {
        // x^4 + z^4 at (1, 0) -> 1
        let f = BinaryForm::from_i64(&[1, 0, 0, 0, 1]);
        assert_eq!(f.evaluate(&rat_i(1), &rat_i(0)), rat_i(1));
        // g1 (571a1) at (15, 4) is positive
        let g1 = BinaryForm::from_i64(&[-11, 68, -52, -164, -64]);
        assert!(g1.evaluate(&rat_i(15), &rat_i(4)) > BigRational::zero());
        // gamma_1 = (4/9)(5x^2 - 16xz - 12z^2) at (15, 4) is negative
        let gamma1 = BinaryForm::new(vec![rat(20, 9), rat(-64, 9), rat(-48, 9)]);
        assert!(gamma1.evaluate(&rat_i(15), &rat_i(4)) < BigRational::zero());
    }

    #[test]
    fn evaluation_is_homogeneous() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let f = BinaryForm::new((0..5).map(|_| rand_rat(&mut rng)).collect());
            let (x, z) = (rand_rat(&mut rng), rand_rat(&mut rng));
            let lam = rat(rng.gen_range(1..=7), rng.gen_range(1..=3));
            let lhs = f.evaluate(&(&lam * &x), &(&lam * &z));
            let mut l4 = BigRational::from_integer(1.into());
            for _ in 0..4 {
                l4 *= &lam;
            }
            assert_eq!(lhs, l4 * f.evaluate(&x, &z));
        }
    }

    #[test]
    fn disc_of_single_monomial() {
        // F = x1 z1 x2 z2 x3 z3 (i=j=k=1), k=3: disc = (x1 z1 x2 z2)^2
        let mut f = Form222::zero();
        *f.coeff_mut(1, 1, 1) = rat_i(1);
        let d = f.disc_k(3);
        // (x1 z1 x2 z2)^2 = x1^2 z1^2 x2^2 z2^2 -> coefficient 1 at (2,2) of a (4,4) form
        assert_eq!(d.degrees(), (4, 4));
        for i in 0..=4 {
            for j in 0..=4 {
                let expect = if i == 2 && j == 2 { rat_i(1) } else { rat_i(0) };
                assert_eq!(*d.coeff(i, j), expect, "at ({}, {})", i, j);
            }
        }
    }

    #[test]
    fn disc_matches_reexpansion() {
        // Recompose A x^2 + B x z + C z^2 from the layers and re-derive
        // B^2 - 4AC on random forms, then check disc_k equals it after
        // evaluating both sides at random points.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let f = rand_form222(&mut rng);
            for k in 1..=3 {
                let d = f.disc_k(k);
                for _ in 0..5 {
                    let pts: Vec<BigRational> = (0..6).map(|_| rand_rat(&mut rng)).collect();
                    // Evaluate F at (xk, zk) symbolic via direct quadratic values
                    let (xa, za, xb, zb) = (&pts[0], &pts[1], &pts[2], &pts[3]);
                    let (xk, zk) = (&pts[4], &pts[5]);
                    let full = match k {
                        1 => f.evaluate([(xk, zk), (xa, za), (xb, zb)]),
                        2 => f.evaluate([(xa, za), (xk, zk), (xb, zb)]),
                        _ => f.evaluate([(xa, za), (xb, zb), (xk, zk)]),
                    };
                    let a = f.quadratic_layer(k, 0).evaluate(xa, za, xb, zb);
                    let b = f.quadratic_layer(k, 1).evaluate(xa, za, xb, zb);
                    let c = f.quadratic_layer(k, 2).evaluate(xa, za, xb, zb);
                    assert_eq!(full, &a * xk * xk + &b * xk * zk + &c * zk * zk);
                    assert_eq!(
                        d.evaluate(xa, za, xb, zb),
                        &b * &b - rat_i(4) * &a * &c
                    );
                }
            }
        }
    }

    #[test]
    fn specialize_commutes_with_evaluate() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..10 {
            let f = rand_form222(&mut rng);
            let pts: Vec<BigRational> = (0..6).map(|_| rand_rat(&mut rng)).collect();
            let (x1, z1, x2, z2, x3, z3) =
                (&pts[0], &pts[1], &pts[2], &pts[3], &pts[4], &pts[5]);
            let direct = f.evaluate([(x1, z1), (x2, z2), (x3, z3)]);
            let s2 = f.specialize(2, x2, z2).unwrap();
            assert_eq!(s2.evaluate(x1, z1, x3, z3), direct);
            let s23 = f.specialize2(2, (x2, z2), 3, (x3, z3)).unwrap();
            assert_eq!(s23.evaluate(x1, z1), direct);
        }
    }

    #[test]
    fn specialize_structural() {
        // All coefficients 0 in the slot-1 x1^2 layer; specializing slot 1 at
        // (1,0) keeps only that (zero) layer.
        let f = Form222::from_fn(|i, _, _| if i == 0 { rat_i(0) } else { rat_i(1) });
        let s = f.specialize(1, &rat_i(1), &rat_i(0)).unwrap();
        assert!(s.is_zero());
        // Trivial substitution picks the top layer.
        let g = Form222::from_fn(|i, j, k| rat_i((9 * i + 3 * j + k) as i64));
        let s = g.specialize(1, &rat_i(1), &rat_i(0)).unwrap();
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(*s.coeff(j, k), rat_i((3 * j + k) as i64));
            }
        }
    }

    #[test]
    fn zero_point_rejected() {
        let f = Form222::zero();
        assert!(matches!(
            f.specialize(1, &rat_i(0), &rat_i(0)),
            Err(FormError::ZeroPoint)
        ));
    }

    #[test]
    fn content_scales_by_abs() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let mut f = BinaryForm::new((0..5).map(|_| rand_rat(&mut rng)).collect());
            if f.is_zero() {
                f = BinaryForm::from_i64(&[1, 0, 0, 0, 1]);
            }
            let lam = rat(rng.gen_range(1..=9), rng.gen_range(1..=5))
                * rat_i(if rng.gen_bool(0.5) { 1 } else { -1 });
            let scaled = f.scale(&lam);
            let expect = f.content().unwrap() * lam.abs();
            assert_eq!(scaled.content().unwrap(), expect);
        }
    }
}
