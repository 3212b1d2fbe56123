//! Hilbert functions, series, polynomials, and regularity.
//!
//! Series are stored exactly as integer-coefficient numerators over
//! (1 - t)^n; nothing here ever goes through floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cones::ConeDecomposition;
use crate::error::Error;
use crate::groebner::MonomialSubmodule;
use crate::module::FreeModuleSpec;
use crate::monomial::monomials_of_degree;

/// Binomial coefficient as a polynomial value: C(a, k) with integer a of
/// either sign, computed by the falling-factorial product (exact).
pub fn binomial(a: i64, k: u64) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    let mut num = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(a) - BigInt::from(j);
    }
    let mut den = BigInt::one();
    for j in 1..=k {
        den *= BigInt::from(j);
    }
    num / den
}

/// Combinatorial binomial: zero whenever a < 0. This is the reading used
/// when a closed formula is evaluated below its stated range.
pub fn binomial_clamped(a: i64, k: u64) -> BigInt {
    if a < 0 {
        BigInt::zero()
    } else {
        binomial(a, k)
    }
}

/// HS(t) = numerator / (1 - t)^den_pow with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    num: Vec<BigInt>,
    den_pow: usize,
}

impl HilbertSeries {
    pub fn new(mut num: Vec<BigInt>, den_pow: usize) -> Self {
        while num.last().is_some_and(|c| c.is_zero()) {
            num.pop();
        }
        HilbertSeries { num, den_pow }
    }

    pub fn zero(den_pow: usize) -> Self {
        HilbertSeries {
            num: Vec::new(),
            den_pow,
        }
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn den_pow(&self) -> usize {
        self.den_pow
    }

    pub fn is_zero_series(&self) -> bool {
        self.num.is_empty()
    }

    /// The reduced form (numerator', k) with numerator'(1) != 0; unique.
    /// The zero series reduces to ([], 0).
    pub fn reduced(&self) -> (Vec<BigInt>, usize) {
        if self.num.is_empty() {
            return (Vec::new(), 0);
        }
        let mut num = self.num.clone();
        let mut k = self.den_pow;
        while k > 0 && num.iter().sum::<BigInt>().is_zero() {
            // divide by (1 - t): q_i = sum_{j<=i} num_j
            let mut acc = BigInt::zero();
            let mut q = Vec::with_capacity(num.len());
            for c in &num {
                acc += c;
                q.push(acc.clone());
            }
            while q.last().is_some_and(|c| c.is_zero()) {
                q.pop();
            }
            num = q;
            k -= 1;
        }
        (num, k)
    }

    /// The Hilbert function value at degree z (coefficient of t^z).
    pub fn hf(&self, z: u64) -> BigInt {
        let k = self.den_pow as u64;
        let mut total = BigInt::zero();
        for (i, c) in self.num.iter().enumerate() {
            let i = i as u64;
            if i > z {
                break;
            }
            if k == 0 {
                if i == z {
                    total += c;
                }
            } else {
                // coefficient of t^(z-i) in 1/(1-t)^k
                total += c * binomial((z - i + k - 1) as i64, k - 1);
            }
        }
        total
    }

    pub fn scale_shift(&self, shift: usize) -> HilbertSeries {
        let mut num = vec![BigInt::zero(); shift];
        num.extend(self.num.iter().cloned());
        HilbertSeries::new(num, self.den_pow)
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        assert_eq!(self.den_pow, other.den_pow);
        let mut num = vec![BigInt::zero(); self.num.len().max(other.num.len())];
        for (i, c) in self.num.iter().enumerate() {
            num[i] += c;
        }
        for (i, c) in other.num.iter().enumerate() {
            num[i] += c;
        }
        HilbertSeries::new(num, self.den_pow)
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// (1 - t)^k as a coefficient vector.
fn one_minus_t_pow(k: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::one()];
    for _ in 0..k {
        acc = poly_mul(&acc, &[BigInt::one(), -BigInt::one()]);
    }
    acc
}

/// HS of the direct sum of the cones of P, over the common denominator
/// (1 - t)^n: each cone C(h, u) contributes t^deg(h) (1-t)^(n-|u|).
pub fn hs_from_cones(spec: &FreeModuleSpec, p: &ConeDecomposition) -> HilbertSeries {
    let n = spec.nvars();
    let mut num = Vec::new();
    for cone in &p.cones {
        let d = spec.degree_of(&cone.pivot) as usize;
        let mut term = one_minus_t_pow(n - cone.vars.len());
        let mut shifted = vec![BigInt::zero(); d];
        shifted.append(&mut term);
        if shifted.len() > num.len() {
            num.resize(shifted.len(), BigInt::zero());
        }
        for (i, c) in shifted.into_iter().enumerate() {
            num[i] += c;
        }
    }
    HilbertSeries::new(num, n)
}

/// Closed series of the normal forms of JF for J generated by a
/// homogeneous regular sequence of the given degrees:
/// (Σ t^deg(e_i)) Π (1 - t^{d_i}) / (1-t)^n. Also returns the Hilbert
/// regularity d_1 + … + d_k + l - n + 1 (which may be negative).
pub fn hs_regular_sequence(
    degrees: &[u64],
    basis_degrees: &[u64],
    n: usize,
) -> Result<(HilbertSeries, i64), Error> {
    if degrees.len() > n {
        return Err(Error::InvalidInput(format!(
            "regular sequence length {} exceeds variable count {}",
            degrees.len(),
            n
        )));
    }
    if degrees.contains(&0) {
        return Err(Error::InvalidInput("regular sequence degrees must be >= 1".into()));
    }
    let mut num = Vec::new();
    for &d in basis_degrees {
        let d = d as usize;
        if num.len() <= d {
            num.resize(d + 1, BigInt::zero());
        }
        num[d] += BigInt::one();
    }
    for &d in degrees {
        let mut factor = vec![BigInt::zero(); d as usize + 1];
        factor[0] = BigInt::one();
        factor[d as usize] = -BigInt::one();
        num = poly_mul(&num, &factor);
    }
    let l = basis_degrees.iter().max().copied().unwrap_or(0);
    let reg = degrees.iter().map(|&d| d as i64).sum::<i64>() + l as i64 - n as i64 + 1;
    Ok((HilbertSeries::new(num, n), reg))
}

/// Direct enumeration oracle: the number of module monomials of degree z
/// outside the given monomial submodule.
pub fn hf_enumerate(spec: &FreeModuleSpec, msub: &MonomialSubmodule, z: u64) -> u64 {
    let mut count = 0u64;
    for pos in 0..spec.rank() {
        let shift = spec.basis_degree(pos);
        if z < shift {
            continue;
        }
        for m in monomials_of_degree(spec.nvars(), z - shift) {
            if !msub.generators_at(pos).iter().any(|g| g.divides(&m)) {
                count += 1;
            }
        }
    }
    count
}

/// A numerical polynomial in z, stored with integer coordinates in the
/// binomial basis C(z + i, i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial {
    coords: Vec<BigInt>,
}

impl HilbertPolynomial {
    pub fn zero() -> Self {
        HilbertPolynomial { coords: Vec::new() }
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// None for the zero polynomial; callers apply the deg(0) = -1
    /// convention where a plain integer is needed.
    pub fn degree(&self) -> Option<usize> {
        if self.coords.is_empty() {
            None
        } else {
            Some(self.coords.len() - 1)
        }
    }

    pub fn evaluate(&self, z: i64) -> BigInt {
        let mut total = BigInt::zero();
        for (i, c) in self.coords.iter().enumerate() {
            total += c * binomial(z + i as i64, i as u64);
        }
        total
    }

    /// Build from exact power-basis coefficients (constant first). The
    /// input must be a numerical polynomial; coordinates are integers.
    pub fn from_power_basis(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let mut coords = vec![BigInt::zero(); coeffs.len()];
        while !coeffs.is_empty() {
            let d = coeffs.len() - 1;
            let mut fact = BigInt::one();
            for j in 1..=d {
                fact *= BigInt::from(j);
            }
            let cd = coeffs[d].clone() * BigRational::from_integer(fact);
            assert!(
                cd.denom().is_one(),
                "not a numerical polynomial: non-integer binomial coordinate"
            );
            let cd_int = cd.numer().clone();
            let basis = binom_power_basis(d as i64, d);
            for (j, b) in basis.iter().enumerate() {
                coeffs[j] -= BigRational::from_integer(cd_int.clone()) * b;
            }
            coords[d] = cd_int;
            while coeffs.last().is_some_and(|c| c.is_zero()) {
                coeffs.pop();
            }
            if coeffs.len() > d {
                // numerical error is impossible with exact arithmetic
                unreachable!("degree did not drop during binomial peeling");
            }
        }
        while coords.last().is_some_and(|c| c.is_zero()) {
            coords.pop();
        }
        HilbertPolynomial { coords }
    }
}

/// Power-basis coefficients (constant first, exact) of C(z + a, k).
pub fn binom_power_basis(a: i64, k: usize) -> Vec<BigRational> {
    // product (z + a - j) for j = 0..k-1, divided by k!
    let mut acc = vec![BigRational::one()];
    for j in 0..k {
        let shift = BigRational::from_integer(BigInt::from(a - j as i64));
        // multiply acc by (z + shift)
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i] += c * &shift;
            next[i + 1] += c;
        }
        acc = next;
    }
    let mut fact = BigInt::one();
    for j in 1..=k {
        fact *= BigInt::from(j);
    }
    let inv = BigRational::new(BigInt::one(), fact);
    acc.into_iter().map(|c| c * &inv).collect()
}

/// The Hilbert polynomial and Hilbert regularity of a series. The
/// regularity is computed as deg(g) - k + 1 from the reduced form
/// g/(1-t)^k, clamped at 0 (series coefficients only exist for z >= 0).
pub fn hp_and_regularity(hs: &HilbertSeries) -> (HilbertPolynomial, u64) {
    let (g, k) = hs.reduced();
    if g.is_empty() {
        return (HilbertPolynomial::zero(), 0);
    }
    let degg = g.len() - 1;
    let reg = (degg as i64 - k as i64 + 1).max(0) as u64;
    if k == 0 {
        return (HilbertPolynomial::zero(), reg);
    }
    // HP(z) = sum_i g_i C(z - i + k - 1, k - 1) as a polynomial
    let mut coeffs = vec![BigRational::zero(); k];
    for (i, gi) in g.iter().enumerate() {
        let basis = binom_power_basis(k as i64 - 1 - i as i64, k - 1);
        for (j, b) in basis.iter().enumerate() {
            coeffs[j] += BigRational::from_integer(gi.clone()) * b;
        }
    }
    (HilbertPolynomial::from_power_basis(coeffs), reg)
}

/// dim(F/M) = deg(HP) + 1, with deg(0) = -1 so artinian quotients report 0.
/// The zero series means M = F, which the degree-bound pipeline rejects
/// as improper.
pub fn dimension(hs: &HilbertSeries) -> Result<usize, Error> {
    if hs.is_zero_series() {
        return Err(Error::FullModule);
    }
    let (hp, _) = hp_and_regularity(hs);
    Ok(match hp.degree() {
        None => 0,
        Some(d) => d + 1,
    })
}
